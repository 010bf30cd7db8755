#pragma once

#include <string>
#include <vector>

#include "dms/lattice.hpp"
#include "dms/profile.hpp"

namespace dms {

// Three independent algorithms for e^{i*theta*Laplacian}:
//   taylor   - operator Taylor series on an enlarged box; the reference oracle.
//   spectral - periodic ring embedding diagonalized by DFT; runtime default.
//   bessel   - integer-order Bessel kernel convolution; dim 1 only.
enum class PropagatorMethod { taylor, spectral, bessel };

PropagatorMethod propagator_method_from_string(const std::string& s);
std::string to_string(PropagatorMethod m);

struct PropagatorSettings {
    PropagatorMethod method = PropagatorMethod::spectral;
    double max_theta = 2.0;     // validated |theta| range
    double tolerance = 1e-14;   // guard-band sizing target
};

class PropagatorEngine {
public:
    PropagatorEngine(int dim, int radius, PropagatorSettings settings = {});

    int dim() const { return dim_; }
    int radius() const { return radius_; }
    PropagatorMethod method() const { return settings_.method; }
    double max_theta() const { return settings_.max_theta; }
    double tolerance() const { return settings_.tolerance; }
    int guard() const { return guard_; }
    int ring_size() const { return ring_; }

    // Per-axis kernel <n|e^{i*theta*L}|0> of the one-dimensional Laplacian,
    // n = -max_offset..max_offset. The d-dimensional kernel is the product
    // of per-axis factors.
    std::vector<Complex> kernel_row(double theta, int max_offset) const;

    // <x|e^{i*theta*Laplacian}|y>; depends on x-y only.
    Complex kernel(double theta, const Point& x, const Point& y) const;

    // e^{i*theta*Laplacian} f restricted back to the box.
    GridFunction evolve(const GridFunction& f, double theta) const;

    // e^{i*D(t)*Laplacian} f for the managed evolution, t in [0,1].
    GridFunction evolve_managed(const DiffractionProfile& p, const GridFunction& f,
                                double t) const;

    // Smallest m with e^{4d|theta|} (4d|theta|)^m / m! below the series floor.
    int taylor_terms(double theta) const;

private:
    void check_theta(double theta) const;

    std::vector<Complex> taylor_row(double theta, int max_offset) const;
    std::vector<Complex> bessel_row(double theta, int max_offset) const;
    std::vector<Complex> spectral_row(double theta, int max_offset) const;

    GridFunction evolve_taylor(const GridFunction& f, double theta) const;
    GridFunction evolve_spectral(const GridFunction& f, double theta) const;
    GridFunction evolve_bessel(const GridFunction& f, double theta) const;

    int dim_;
    int radius_;
    PropagatorSettings settings_;
    int guard_;
    int ring_;
};

// Smallest g with e^{c} c^g / g! < tol, evaluated in log space.
int factorial_tail_cutoff(double c, double tol);

}  // namespace dms
