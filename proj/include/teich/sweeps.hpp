#pragma once

// Randomized identity sweeps over points, slopes and foliations. Each returns the worst
// value over n draws; draws come from block-seeded streams, so Exec::serial and
// Exec::parallel return identical results.

#include <cstddef>
#include <random>

#include "teich/foliation.hpp"
#include "teich/parallel.hpp"
#include "teich/rng.hpp"
#include "teich/torus_point.hpp"

namespace teich::sweeps {

/// Re uniform on [-3, 3], log Im uniform on [-2, 2].
TorusPoint random_point(std::mt19937_64& g);
/// Cauchy-distributed slope (uniform angle).
ProjectiveClass random_slope(std::mt19937_64& g);
/// Uniform direction, log-uniform scale in [e^-2, e^2].
MeasuredFoliation random_foliation(std::mt19937_64& g);
/// Uniform among SL(2,Z) matrices with entries in [-bound, bound].
MappingClass random_mapping_class(std::mt19937_64& g, int bound = 5);

/// max |P(x0,x,u) rho_{x0}(u) / rho_x(u) - 1|.
double kernel_transport(std::size_t n, const SeedStream& s, Exec exec = Exec::parallel);
/// max |rho_y(u) / (rebase(x,y,u) rho_x(u)) - 1|.
double rebase_identity(std::size_t n, const SeedStream& s, Exec exec = Exec::parallel);
/// max |P(x,y,u) P(y,x,u) - 1|.
double kernel_reciprocity(std::size_t n, const SeedStream& s, Exec exec = Exec::parallel);
/// max over triples of (i(F,G)^2 - Ext_x(F) Ext_x(G)) / (Ext_x(F) Ext_x(G)); <= 0 when Minsky holds.
double minsky_violation(std::size_t n, const SeedStream& s, Exec exec = Exec::parallel);
/// max relative excess of Ext_x(F)/Ext_y(F) outside [e^{-2d}, e^{2d}].
double quasi_invariance_violation(std::size_t n, const SeedStream& s, Exec exec = Exec::parallel);
/// max |Ext_{gamma x}(gamma F) / Ext_x(F) - 1| with entries of gamma in [-5, 5].
double mcg_equivariance(std::size_t n, const SeedStream& s, Exec exec = Exec::parallel);
/// max of |busemann(x0,x,u)| - d_T(x0,x).
double busemann_bound_violation(std::size_t n, const SeedStream& s, Exec exec = Exec::parallel);
/// max |closed-form distance - Kerckhoff-sup distance|.
double distance_closed_vs_sup(std::size_t n, const SeedStream& s, Exec exec = Exec::parallel);
/// max |log tanh d_T(x,y) - log |cayley(x,y)||, the disk-model form computed without d_T.
double green_vs_disk(std::size_t n, const SeedStream& s, Exec exec = Exec::parallel);

/// log |cayley(x, y)| = 1/2 log(1 - 4 Im x Im y / |y - conj x|^2).
double log_abs_cayley(const TorusPoint& x, const TorusPoint& y);

} // namespace teich::sweeps
