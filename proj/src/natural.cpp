#include "powsum/natural.hpp"

#include <limits>
#include <stdexcept>

namespace powsum {

Natural parse_natural(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("expected a decimal natural number, got an empty string");
    }
    Natural value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("expected a decimal natural number, got '" +
                                        std::string(text) + "'");
        }
        value *= 10;
        value += static_cast<unsigned>(c - '0');
    }
    return value;
}

std::string to_decimal(const Natural& value) { return value.str(); }

bool fits_u64(const Natural& value) {
    return value >= 0 && value <= std::numeric_limits<std::uint64_t>::max();
}

std::uint64_t to_u64(const Natural& value) {
    if (!fits_u64(value)) {
        throw std::out_of_range("value " + value.str() + " does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(value);
}

}  // namespace powsum
