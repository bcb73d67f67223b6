#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace teich {

/// A marked flat once-punctured torus, i.e. a point tau of the upper half-plane.
/// The lattice is Z + Z*tau and the flat area of the torus is im().
class TorusPoint {
public:
    TorusPoint(double re, double im) : re_(re), im_(im) {
        if (!(im > 0.0) || !std::isfinite(re) || !std::isfinite(im)) {
            throw std::domain_error("TorusPoint: imaginary part must be positive and finite, got " +
                                    std::to_string(re) + " + " + std::to_string(im) + "i");
        }
    }
    explicit TorusPoint(std::complex<double> z) : TorusPoint(z.real(), z.imag()) {}

    static TorusPoint square() { return {0.0, 1.0}; }

    double re() const { return re_; }
    double im() const { return im_; }
    std::complex<double> z() const { return {re_, im_}; }

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

private:
    double re_;
    double im_;
};

} // namespace teich
