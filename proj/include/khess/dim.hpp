// dim.hpp
#pragma once

#include <string>

#include "khess/errors.hpp"

namespace khess {

/// Ambient dimension n and Hessian order k.
struct Dim {
    int n = 2;
    int k = 1;

    /// Validates n >= 2 and 1 <= k <= n.
    static Dim make(int n, int k)
    {
        if (n < 2)
            throw ParameterError("dimension n must be >= 2, got " + std::to_string(n));
        if (k < 1 || k > n)
            throw ParameterError("order k must satisfy 1 <= k <= n, got k=" + std::to_string(k) +
                                 ", n=" + std::to_string(n));
        return Dim{n, k};
    }

    // The radial reduction and every barrier need k <= n-1.
    void require_radial() const
    {
        if (k > n - 1)
            throw ParameterError("radial operators require k <= n-1, got k=" + std::to_string(k) +
                                 ", n=" + std::to_string(n));
    }

    friend bool operator==(const Dim&, const Dim&) = default;
};

} // namespace khess
