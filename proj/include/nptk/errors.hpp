#ifndef NPTK_ERRORS_HPP
#define NPTK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nptk {

enum class errc {
    division_by_zero,
    split_required,
    degree_zero,
    not_squarefree,
    wrong_characteristic,
    invert_zero,
    not_coprime,
    not_integral,
    not_monic,
    char_divides_degree,
    all_coefficients_zero,
    unresolved_order,
    wild_ramification,
    limit_exceeded,
    unsupported_product,
    ladder_input,
    zero_ideal,
    cap_exceeded,
    syntax_error,
    non_unit_leading,
    unsupported_field,
    internal,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

class syntax_error : public error {
  public:
    syntax_error(std::size_t pos, const std::string& expected)
        : error(errc::syntax_error,
                "syntax error at position " + std::to_string(pos) + ": expected " + expected),
          pos_(pos), expected_(expected) {}
    std::size_t position() const { return pos_; }
    const std::string& expected() const { return expected_; }

  private:
    std::size_t pos_;
    std::string expected_;
};

} // namespace nptk

#endif
