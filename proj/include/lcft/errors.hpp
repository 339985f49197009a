#ifndef LCFT_ERRORS_HPP
#define LCFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lcft {

// Error categories, mapped to CLI exit codes in tools/lcft_main.cpp:
//   usage -> 2, precision -> 3, everything else that aborts a check -> 1.
enum class ErrKind {
    precision,        // PrecisionExhausted: a required coefficient is outside every certified window
    division_by_zero, // exact zero in a denominator
    usage,            // malformed literal, invalid config, caps exceeded
    trivial_class,    // Kummer class is an l-th power
    unsupported_class,
    unsupported_shape,
    split_extension,  // Artin-Schreier datum lies in ℘(F)
    non_integral,
    rewrite_failure,      // norm result does not descend to the base field
    adjunction_mismatch,  // two norm routes disagree
    constant_field_too_small,
    unsupported_extension,
    layer_insufficient,
    ambiguous_match,
    falsified, // a theorem-backed check found a counterexample
};

class Error : public std::runtime_error {
  public:
    Error(ErrKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrKind kind() const { return kind_; }

  private:
    ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

[[noreturn]] inline void fail_precision(const std::string& msg) { fail(ErrKind::precision, "PrecisionExhausted: " + msg); }
[[noreturn]] inline void fail_usage(const std::string& msg) { fail(ErrKind::usage, msg); }

const char* err_kind_name(ErrKind k);

} // namespace lcft

#endif
