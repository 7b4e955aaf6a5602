#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <utility>

#include "moulcalc/word.hpp"

namespace moulcalc {

/// Length bound used by rule-defined moulds: defined on words of any length.
inline constexpr int unbounded = std::numeric_limits<int>::max();

/// A mould: a scalar-valued function on words over a fixed alphabet,
/// tabulated up to a length bound and/or given by a closed-form rule.
///
/// Values are immutable after construction. Rule results are memoized in the
/// instance; copies share state, so moulds are cheap to pass by value.
/// Table fills and memoization are per-instance and not synchronized:
/// evaluate a given instance from one thread at a time.
class Mould {
public:
    using Rule = std::function<Scalar(const Alphabet&, const Word&)>;
    using Table = std::map<Word, Scalar>;

    Mould() : impl_(std::make_shared<Impl>()) {}

    Mould(Alphabet alpha, int bound, Table table) : impl_(std::make_shared<Impl>()) {
        impl_->alpha = std::move(alpha);
        impl_->bound = bound;
        impl_->table = std::move(table);
    }

    Mould(Alphabet alpha, Rule rule, int bound = unbounded) : impl_(std::make_shared<Impl>()) {
        impl_->alpha = std::move(alpha);
        impl_->bound = bound;
        impl_->rule = std::move(rule);
    }

    const Alphabet& alphabet() const { return impl_->alpha; }
    int bound() const { return impl_->bound; }
    bool has_rule() const { return static_cast<bool>(impl_->rule); }

    /// M^w. Throws undefined_word when neither the table nor a rule covers w,
    /// and pole_at_word when a closed form hits a vanishing denominator.
    Scalar operator()(const Word& w) const {
        if (w.length() > impl_->bound)
            throw undefined_word("word " + w.str() + " exceeds the mould's length bound");
        auto it = impl_->table.find(w);
        if (it != impl_->table.end()) return it->second;
        if (!impl_->rule) throw undefined_word("no value stored for word " + w.str());
        auto mt = impl_->memo.find(w);
        if (mt != impl_->memo.end()) return mt->second;
        Scalar v = impl_->rule(impl_->alpha, w);
        impl_->memo.emplace(w, v);
        return v;
    }

    Scalar empty_value() const { return (*this)(Word::empty()); }

    /// Force evaluation of every word of length <= maxlen over the alphabet's
    /// generating letters and return the resulting table.
    Table tabulate(int maxlen) const {
        Table t;
        for (const auto& w : words_up_to(impl_->alpha.letters, maxlen)) t[w] = (*this)(w);
        return t;
    }

private:
    struct Impl {
        Alphabet alpha;
        int bound = unbounded;
        Table table;
        Rule rule;
        mutable Table memo;
    };
    std::shared_ptr<Impl> impl_;
};

}  // namespace moulcalc
