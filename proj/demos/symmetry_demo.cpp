// Walk the catalog and verify each mould's declared symmetry over sampled
// rational alphabets.

#include <cstdio>

#include "moulcalc/moulcalc.hpp"

using namespace moulcalc;

int main() {
    Rng rng(0);
    int bad = 0;
    for (const auto& entry : catalog::entries()) {
        if (entry.name == "Sig") {
            auto rep = check_il(catalog::sig_rule(Scalar(2), 6), SymmetryKind::symetril, 3, 3);
            std::printf("%-8s %-9s %s\n", entry.name.c_str(), symmetry_name(entry.declared),
                        rep.ok ? "verified (length 3)" : "FAILED");
            bad += rep.ok ? 0 : 1;
            continue;
        }
        Alphabet a;
        if (entry.name == "Se" || entry.name == "Ne" || entry.name == "Ne_inv")
            a = sample_multiplicative_alphabet(3, rng);
        else if (entry.name == "Sam" || entry.name == "Tram") {
            a = sample_additive_alphabet(2, rng);
            a.letters.push_back(Letter::weight(Scalar(0)));
        } else {
            a = sample_additive_alphabet(3, rng);
        }
        auto rep = check_symmetry(catalog::make(entry.name, a), entry.declared, 3, /*skip_poles=*/true);
        std::printf("%-8s %-9s %s\n", entry.name.c_str(), symmetry_name(entry.declared),
                    rep.ok ? "verified (length 3)" : "FAILED");
        bad += rep.ok ? 0 : 1;
    }
    return bad == 0 ? 0 : 1;
}
