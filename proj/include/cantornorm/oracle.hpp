#pragma once

#include <cstdint>
#include <vector>

#include "cantornorm/errors.hpp"

namespace cantornorm {

/// An infinite bit source standing in for an arbitrary set A of naturals:
/// an explicit finite prefix, then a constant default bit.
class Oracle {
public:
    Oracle() = default;
    Oracle(std::vector<std::uint8_t> prefix, std::uint8_t default_bit)
        : prefix_(std::move(prefix)), default_bit_(default_bit) {
        for (auto b : prefix_) {
            if (b > 1) throw DomainError("oracle bits must be 0 or 1");
        }
        if (default_bit_ > 1) throw DomainError("oracle default bit must be 0 or 1");
    }

    std::uint8_t bit(std::uint64_t n) const noexcept {
        return n < prefix_.size() ? prefix_[n] : default_bit_;
    }

    const std::vector<std::uint8_t>& prefix() const noexcept { return prefix_; }
    std::uint8_t default_bit() const noexcept { return default_bit_; }

    friend bool operator==(const Oracle&, const Oracle&) = default;

private:
    std::vector<std::uint8_t> prefix_;
    std::uint8_t default_bit_ = 0;
};

}  // namespace cantornorm
