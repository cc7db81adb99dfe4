#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cfp/errors.hpp"

namespace cfp {

// Coupling constant lambda <= 0 together with the rescaled lambda_r = |l|/(1-2|l|).
struct Coupling {
    double lambda = 0.0;
    double abs = 0.0;       // |lambda|
    double lambda_r = 0.0;
    bool exploratory = false;

    Coupling() = default;

    // Throws DomainError outside [-1/6, 0] unless exploratory, which admits (-1/2, 0].
    explicit Coupling(double lam, bool allow_exploratory = false) : lambda(lam) {
        if (!std::isfinite(lam) || lam > 0.0)
            throw DomainError("coupling must be <= 0");
        exploratory = lam < -1.0 / 6.0;
        if (exploratory && !allow_exploratory)
            throw DomainError("coupling below -1/6 requires exploratory mode");
        if (lam <= -0.5)
            throw DomainError("coupling must exceed -1/2");
        abs = -lam;
        lambda_r = abs / (1.0 - 2.0 * abs);
    }

    bool is_zero() const { return abs == 0.0; }
    double alpha() const { return abs * std::numbers::pi; }  // |lambda| pi
};

}  // namespace cfp
