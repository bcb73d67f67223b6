#pragma once

#include <complex>
#include <cstddef>

#include "teich/foliation.hpp"
#include "teich/torus_point.hpp"

namespace teich {

/// Surface of genus g with m punctures; complexity xi = 3g - 3 + m.
class SurfaceType {
public:
    SurfaceType(int g, int m);

    static SurfaceType punctured_torus() { return {1, 1}; }

    int genus() const { return g_; }
    int punctures() const { return m_; }
    int complexity() const { return 3 * g_ - 3 + m_; }
    /// Real dimension of MF, 6g - 6 + 2m.
    int mf_dimension() const { return 2 * complexity(); }

    friend bool operator==(const SurfaceType&, const SurfaceType&) = default;

private:
    int g_;
    int m_;
};

/// A holomorphic quadratic differential coeff * dz^2 on the flat torus at `base`.
struct QuadraticDifferential {
    std::complex<double> coeff;
    TorusPoint base;

    /// L1 norm; the flat torus has area Im(base).
    double norm() const { return std::abs(coeff) * base.im(); }
};

/// Ext_tau(F_[a,b]) = |a tau - b|^2 / Im tau. Throws std::domain_error for the zero foliation.
double extremal_length(const TorusPoint& tau, const MeasuredFoliation& f);
/// Extremal length of the [1,u] (or [0,1]) representative of the class.
double extremal_length(const TorusPoint& tau, const ProjectiveClass& u);

/// Hubbard-Masur differential q_{F,tau} whose vertical foliation is F.
QuadraticDifferential hubbard_masur(const TorusPoint& tau, const MeasuredFoliation& f);

enum class DistanceMethod {
    closed_form,    ///< asinh(|t1 - t2| / (2 sqrt(Im t1 Im t2))), half the hyperbolic distance
    kerckhoff_sup,  ///< 1/2 log of the maximized extremal length ratio
};

struct KerckhoffSup {
    double ratio;              ///< sup_u Ext_t1(F_u) / Ext_t2(F_u), always >= 1
    ProjectiveClass maximizer;
};

/// sup over PMF of Ext_t1 / Ext_t2. The ratio is a quotient of two quadratic forms in
/// (cos theta, sin theta), so a grid scan over theta followed by golden-section refinement
/// finds its unique maximum on RP^1.
KerckhoffSup kerckhoff_sup(const TorusPoint& t1, const TorusPoint& t2, std::size_t grid = 4096);

double teich_distance(const TorusPoint& t1, const TorusPoint& t2,
                      DistanceMethod method = DistanceMethod::closed_form);

/// Value of log tanh d_T, with the logarithmic pole as a distinct state.
class GreenValue {
public:
    static GreenValue pole() { return GreenValue(true, 0.0); }
    static GreenValue finite(double v) { return GreenValue(false, v); }

    bool is_pole() const { return pole_; }
    /// Throws std::domain_error at the pole.
    double value() const;

private:
    GreenValue(bool pole, double v) : pole_(pole), value_(v) {}
    bool pole_;
    double value_;
};

/// Pluricomplex Green function log tanh d_T(t1, t2).
GreenValue green(const TorusPoint& t1, const TorusPoint& t2);

/// Moebius map H -> unit disk sending `center` to 0: (tau - c) / (tau - conj c).
std::complex<double> cayley(const TorusPoint& center, std::complex<double> tau);
/// Inverse of cayley(center, .).
std::complex<double> cayley_inverse(const TorusPoint& center, std::complex<double> w);

double gromov_product(const TorusPoint& y0, const TorusPoint& x, const TorusPoint& y);
/// exp(-2 (x|y)_{y0}).
double exp_pairing(const TorusPoint& y0, const TorusPoint& x, const TorusPoint& y);
/// exp(-d(y0,x)) * sqrt(Ext_x(F_u) / Ext_{y0}(F_u)); independent of the scale of F_u.
double boundary_pairing(const TorusPoint& y0, const TorusPoint& x, const ProjectiveClass& u);
/// i(F_u, F_w) / sqrt(Ext_{y0}(F_u) Ext_{y0}(F_w)).
double boundary_pairing_bb(const TorusPoint& y0, const ProjectiveClass& u, const ProjectiveClass& w);

/// Unit-speed Teichmueller geodesic ray from x toward the boundary point u.
/// Ext_{R(t)}(F_u) = exp(-2t) Ext_x(F_u).
TorusPoint teich_ray(const TorusPoint& x, const ProjectiveClass& u, double t);

/// u_F = -1 / Ext_tau(F).
double u_exhaustion(const TorusPoint& tau, const MeasuredFoliation& f);
/// max(u_G, u_H); G and H must intersect.
double u_pair(const TorusPoint& tau, const MeasuredFoliation& g, const MeasuredFoliation& h);

} // namespace teich
