#pragma once

#include "errors.hpp"
#include "parallel.hpp"
#include "field.hpp"
#include "cyclo.hpp"
#include "gbf.hpp"
#include "spectral.hpp"
#include "props.hpp"
#include "construct.hpp"
#include "decomp.hpp"
#include "io.hpp"
