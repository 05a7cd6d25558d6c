#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mustar {

// Cross-checked computation paths disagreed beyond tolerance.
class NumericalIntegrityError : public std::runtime_error {
public:
    explicit NumericalIntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Measure-spec mini-language rejection, with the offending position.
class SpecParseError : public std::runtime_error {
public:
    SpecParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace mustar
