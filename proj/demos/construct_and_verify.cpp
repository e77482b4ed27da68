// Builds a few g-hyperbent functions from the two field constructions and
// checks them with the library's exact tests.

#include <iostream>

#include "gbentlab/gbentlab.hpp"

using namespace gbentlab;

namespace {

void show(const char* label, const GBF& f) {
    auto gh = is_ghyperbent(f);
    std::cout << label << "  n=" << f.n() << " k=" << f.k() << "  table:";
    for (auto v : f.table()) std::cout << ' ' << v;
    std::cout << "\n  gbent " << is_gbent(f).verdict << ", g-hyperbent " << gh.verdict;
    if (gh.witness) std::cout << " (fails at i=" << gh.witness->i.value_or(1) << ", u=" << gh.witness->u << ")";
    std::cout << '\n';
    if (f.k() >= 2 && f.n() % 2 == 0) {
        auto rep = verify_component_theorem(f);
        for (const auto& c : rep.clauses) std::cout << "    [" << (c.verdict ? "yes" : "no ") << "] " << c.claim << '\n';
    }
}

}  // namespace

int main() {
    PsApSpec ps{2, 3, sample_ps_ap_g(2, 3, 7)};
    GBF f = construct_ps_ap(ps);
    show("PS_ap", f);
    std::cout << "  dual matches the inverted construction: "
              << (dual(f) == construct_ps_ap(invert_ps_ap(ps))) << "\n\n";

    auto good = sample_coset_u_values(2, 3, 3);
    auto crit = check_coset_u_criterion(good);
    std::cout << "coset-U sum " << crit.sum << " target " << crit.target << '\n';
    show("coset-U", construct_coset_u(good));

    auto bad = sample_coset_u_violating(2, 3, 3);
    crit = check_coset_u_criterion(bad);
    std::cout << "\ncoset-U (violating) sum " << crit.sum << " target " << crit.target << '\n';
    show("coset-U", construct_coset_u(bad));
}
