#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "moulcalc/localobj.hpp"

namespace moulcalc {

/// Arborescent sequence: letters with a forest partial order on the indices.
/// succ[i] is the unique greater neighbour of i (its "consequent"), or -1;
/// the maximal element of each irreducible component is its root.
struct ArbWord {
    std::vector<Letter> letters;
    std::vector<int> succ;

    int size() const { return static_cast<int>(letters.size()); }

    std::vector<int> children_of(int i) const {
        std::vector<int> out;
        for (int j = 0; j < size(); ++j)
            if (succ[static_cast<std::size_t>(j)] == i) out.push_back(j);
        return out;
    }

    std::vector<int> roots() const {
        std::vector<int> out;
        for (int j = 0; j < size(); ++j)
            if (succ[static_cast<std::size_t>(j)] == -1) out.push_back(j);
        return out;
    }

    bool is_valid_forest() const {
        for (int i = 0; i < size(); ++i) {
            int hops = 0;
            for (int j = i; j != -1; j = succ[static_cast<std::size_t>(j)])
                if (++hops > size()) return false;  // cycle
        }
        return !letters.empty() || succ.empty();
    }

    /// Canonical key of the subtree rooted at i: letter plus the sorted keys
    /// of the children. Two subtrees are isomorphic as letter-labeled posets
    /// iff their keys agree.
    std::string subtree_key(int i) const {
        std::vector<std::string> ch;
        for (int j : children_of(i)) ch.push_back(subtree_key(j));
        std::sort(ch.begin(), ch.end());
        std::string key = letters[static_cast<std::size_t>(i)].str() + "(";
        for (const auto& c : ch) key += c + ",";
        return key + ")";
    }

    /// Canonical key of the whole forest (sorted multiset of root keys).
    std::string canonical_key() const {
        std::vector<std::string> rs;
        for (int r : roots()) rs.push_back(subtree_key(r));
        std::sort(rs.begin(), rs.end());
        std::string key;
        for (const auto& r : rs) key += r + "|";
        return key;
    }

    std::string str() const {
        std::string s = "{";
        for (int i = 0; i < size(); ++i) {
            if (i) s += " ";
            s += letters[static_cast<std::size_t>(i)].str();
            int p = succ[static_cast<std::size_t>(i)];
            s += "<" + (p == -1 ? std::string("root") : std::to_string(p));
        }
        return s + "}";
    }
};

/// All forest shapes on r labeled nodes: every successor map without cycles.
/// There are (r+1)^{r-1} of them.
inline std::vector<std::vector<int>> forests_of(int r, int cap = 6) {
    if (r > cap) throw cap_exceeded("forest enumeration capped at " + std::to_string(cap) + " nodes");
    std::vector<std::vector<int>> out;
    if (r == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> succ(static_cast<std::size_t>(r), -1);
    std::function<void(int)> rec = [&](int i) {
        if (i == r) {
            ArbWord probe{std::vector<Letter>(static_cast<std::size_t>(r), Letter::weight(Scalar(0))), succ};
            if (probe.is_valid_forest()) out.push_back(succ);
            return;
        }
        for (int p = -1; p < r; ++p) {
            if (p == i) continue;
            succ[static_cast<std::size_t>(i)] = p;
            rec(i + 1);
        }
        succ[static_cast<std::size_t>(i)] = -1;
    };
    rec(0);
    return out;
}

/// proj(a / w): the number of bijections sigma from the indices of a to the
/// positions of w that match letters and embed the forest order into the
/// word order (i below j in a implies sigma(i) < sigma(j)). Zero when the
/// lengths differ. Repeated letters are counted through the bijections,
/// never deduplicated.
inline std::int64_t proj(const ArbWord& a, const Word& w) {
    const int r = a.size();
    if (r != w.length()) return 0;
    std::vector<int> sigma(static_cast<std::size_t>(r), -1);
    std::vector<bool> used(static_cast<std::size_t>(r), false);
    std::int64_t count = 0;
    std::function<void(int)> rec = [&](int i) {
        if (i == r) {
            ++count;
            return;
        }
        for (int pos = 0; pos < r; ++pos) {
            if (used[static_cast<std::size_t>(pos)]) continue;
            if (!(a.letters[static_cast<std::size_t>(i)] == w[pos])) continue;
            // covering constraints against already-placed neighbours:
            // i sits below succ[i], children of i sit below i
            bool ok = true;
            int p = a.succ[static_cast<std::size_t>(i)];
            if (p >= 0 && sigma[static_cast<std::size_t>(p)] >= 0 && pos >= sigma[static_cast<std::size_t>(p)])
                ok = false;
            for (int j = 0; j < r && ok; ++j)
                if (a.succ[static_cast<std::size_t>(j)] == i && sigma[static_cast<std::size_t>(j)] >= 0 &&
                    sigma[static_cast<std::size_t>(j)] >= pos)
                    ok = false;
            if (!ok) continue;
            sigma[static_cast<std::size_t>(i)] = pos;
            used[static_cast<std::size_t>(pos)] = true;
            rec(i + 1);
            used[static_cast<std::size_t>(pos)] = false;
            sigma[static_cast<std::size_t>(i)] = -1;
        }
    };
    rec(0);
    return count;
}

namespace detail {

/// Coefficient jets C_i = B_{tree}(x_i) of the first-order operator attached
/// to the subtree rooted at `root`: the branch forest is applied to the
/// coefficients of the root's derivation.
std::vector<Jet> tree_coefficient_jets(const ArbWord& a, int root, const PreparedField& f, int trunc);

/// Operator of a (sub)forest given by the roots of its irreducible
/// components, with the symmetry factor 1/(d_1! ... d_s!) for repeated
/// identical subtrees.
inline JetOperator forest_operator(const ArbWord& a, const std::vector<int>& roots, const PreparedField& f,
                                   int trunc) {
    const int nu = f.nu;
    if (roots.empty()) return JetOperator::identity();
    // coefficient jets per component and coordinate
    std::vector<std::vector<Jet>> coeffs;
    for (int r : roots) coeffs.push_back(tree_coefficient_jets(a, r, f, trunc));
    // multiplicities of identical components
    std::map<std::string, int> mult;
    for (int r : roots) ++mult[a.subtree_key(r)];
    Scalar factor(1);
    for (const auto& [k, d] : mult) factor /= factorial(d);
    const int d = static_cast<int>(roots.size());
    return JetOperator{[coeffs, factor, d, nu](const Jet& phi) {
        Jet acc(phi.nu, phi.degree_bound);
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        for (;;) {
            Jet term = phi;
            for (int k = 0; k < d; ++k) term = term.derivative(idx[static_cast<std::size_t>(k)]);
            if (!term.is_zero()) {
                for (int k = 0; k < d; ++k)
                    term = term * coeffs[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            }
            acc += term;
            int p = d - 1;
            while (p >= 0 && idx[static_cast<std::size_t>(p)] == nu - 1) idx[static_cast<std::size_t>(p--)] = 0;
            if (p < 0) break;
            ++idx[static_cast<std::size_t>(p)];
        }
        return factor * acc;
    }};
}

inline std::vector<Jet> tree_coefficient_jets(const ArbWord& a, int root, const PreparedField& f, int trunc) {
    const Letter& l = a.letters[static_cast<std::size_t>(root)];
    const HomOp& op = f.part(l.degree_vector());
    JetOperator branches = forest_operator(a, a.children_of(root), f, trunc);
    std::vector<Jet> out;
    for (int i = 0; i < f.nu; ++i) out.push_back(branches(op.coefficient_jet(i, trunc)));
    return out;
}

}  // namespace detail

/// The arborified comould B_{a<}: the unique operator satisfying the
/// coproduct rule over (+)-splittings, homogeneous of order d (the number of
/// irreducible components), and B_{a< . n0} = B_{a<} applied to the
/// coefficients of B_{n0}.
inline JetOperator arb_comould(const ArbWord& a, const PreparedField& f, int trunc) {
    if (!a.is_valid_forest()) throw mould_error("successor map has a cycle");
    for (const auto& l : a.letters)
        if (!l.is_degree() || !f.parts.count(l.degree_vector()))
            throw unknown_letter("arborified letter " + l.str() + " has no homogeneous part");
    return detail::forest_operator(a, a.roots(), f, trunc);
}

/// Arborified mould: M^{a<} = sum_w proj(a / w) M^{omega(w)}. Only words with
/// the letter multiset of `a` contribute.
inline Scalar arborify_mould(const Mould& m, const ArbWord& a, const PreparedField& f) {
    std::vector<Letter> ls = a.letters;
    std::sort(ls.begin(), ls.end());
    Scalar acc(0);
    do {
        Word w(ls);
        std::int64_t p = proj(a, w);
        if (p == 0) continue;
        std::vector<Letter> wl;
        for (const auto& l : w.letters) wl.push_back(Letter::weight(f.weight_of(l.degree_vector())));
        acc += Scalar(p) * m(Word(std::move(wl)));
    } while (std::next_permutation(ls.begin(), ls.end()));
    return acc;
}

/// Distinct arborescent classes on the letters of w: every forest shape with
/// w's letters attached positionwise, deduplicated by canonical form.
inline std::vector<ArbWord> arb_classes_of(const Word& w, int cap = 6) {
    std::map<std::string, ArbWord> classes;
    for (const auto& succ : forests_of(w.length(), cap)) {
        ArbWord a{w.letters, succ};
        classes.try_emplace(a.canonical_key(), a);
    }
    std::vector<ArbWord> out;
    out.reserve(classes.size());
    for (auto& [k, a] : classes) out.push_back(std::move(a));
    return out;
}

/// Residual of the arborification identity
///   B_w = sum over arborescent classes a of proj(a / w) B_{a<}
/// as an operator on jets truncated at `trunc`; the zero operator when the
/// identity holds.
inline JetOperator check_arb_identity(const Word& w, const PreparedField& f, int trunc, int cap = 6) {
    std::vector<const HomOp*> ops;
    for (const auto& l : w.letters) ops.push_back(&f.part(l.degree_vector()));
    JetOperator bw = comould(ops);
    JetOperator sum{[](const Jet& phi) { return Jet(phi.nu, phi.degree_bound); }};
    for (const auto& a : arb_classes_of(w, cap)) {
        std::int64_t p = proj(a, w);
        if (p == 0) continue;
        sum = sum + Scalar(p) * arb_comould(a, f, trunc);
    }
    return bw - sum;
}

}  // namespace moulcalc
