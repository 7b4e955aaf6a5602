#pragma once

#include <stdexcept>
#include <string>

namespace moulcalc {

/// Base class for all domain errors raised by the library.
struct mould_error : std::runtime_error {
    explicit mould_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct alphabet_mismatch : mould_error {
    explicit alphabet_mismatch(const std::string& msg = "alphabet mismatch") : mould_error(msg) {}
};

/// The alphabet carries no semigroup operation (or the required decomposition
/// structure is missing), so contracting shuffles, norms, composition and the
/// Delta* coproduct are undefined.
struct no_semigroup : mould_error {
    explicit no_semigroup(const std::string& msg = "alphabet has no semigroup structure") : mould_error(msg) {}
};

struct empty_word_error : mould_error {
    explicit empty_word_error(const std::string& msg = "operation undefined on the empty word") : mould_error(msg) {}
};

struct not_invertible : mould_error {
    explicit not_invertible(const std::string& msg = "mould has no multiplicative inverse (empty-word value is 0)") : mould_error(msg) {}
};

struct not_comp_invertible : mould_error {
    explicit not_comp_invertible(const std::string& msg = "mould has no composition inverse") : mould_error(msg) {}
};

struct non_nilpotent : mould_error {
    explicit non_nilpotent(const std::string& msg = "series argument must vanish (resp. equal 1) on the empty word") : mould_error(msg) {}
};

struct not_additive : mould_error {
    explicit not_additive(const std::string& msg = "weight map is not additive on concatenation") : mould_error(msg) {}
};

struct not_morphism : mould_error {
    explicit not_morphism(const std::string& msg = "map is not a morphism into the multiplicative monoid") : mould_error(msg) {}
};

/// A closed-form rule was evaluated at a word where a denominator vanishes.
struct pole_at_word : mould_error {
    std::string word_repr;
    explicit pole_at_word(std::string word, const std::string& msg = "pole at word")
        : mould_error(msg + ": " + word), word_repr(std::move(word)) {}
};

struct sample_collision : mould_error {
    explicit sample_collision(const std::string& msg = "sample collision while evaluating a star slot") : mould_error(msg) {}
};

struct undefined_word : mould_error {
    explicit undefined_word(const std::string& msg = "mould has neither table entry nor rule for this word") : mould_error(msg) {}
};

struct unknown_letter : mould_error {
    explicit unknown_letter(const std::string& msg = "letter has no associated homogeneous operator") : mould_error(msg) {}
};

struct not_prepared : mould_error {
    explicit not_prepared(const std::string& msg = "local object is not in prepared form") : mould_error(msg) {}
};

struct inadmissible_degree : mould_error {
    explicit inadmissible_degree(const std::string& msg = "degree vector is not admissible") : mould_error(msg) {}
};

struct resonant_error : mould_error {
    std::string word_repr;
    explicit resonant_error(std::string word, const std::string& msg = "resonant word obstructs linearization")
        : mould_error(msg + ": " + word), word_repr(std::move(word)) {}
};

struct not_local : mould_error {
    explicit not_local(const std::string& msg = "map is not a local diffeomorphism fixing the origin") : mould_error(msg) {}
};

struct cap_exceeded : mould_error {
    explicit cap_exceeded(const std::string& msg = "combinatorial enumeration cap exceeded") : mould_error(msg) {}
};

}  // namespace moulcalc
