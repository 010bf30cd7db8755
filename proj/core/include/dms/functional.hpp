#pragma once

#include "dms/lattice.hpp"
#include "dms/profile.hpp"
#include "dms/propagator.hpp"
#include "dms/quadrature.hpp"

namespace dms {

// Four-linear form: quadrature of sum_x conj(U1) U2 conj(U3) U4 with
// U_j the managed evolution of f_j at the node time. Anti-linear in the
// first and third slots. Each distinct argument is evolved once per node.
Complex quad_form(const GridFunction& f1, const GridFunction& f2,
                  const GridFunction& f3, const GridFunction& f4,
                  const DiffractionProfile& p, const QuadratureRule& rule,
                  const PropagatorEngine& engine);

// Riesz map of the form: inner_product(g, averaged_cubic(f1,f2,f3))
// equals quad_form(g,f1,f2,f3). Conjugation sits on the middle slot.
GridFunction averaged_cubic(const GridFunction& f1, const GridFunction& f2,
                            const GridFunction& f3, const DiffractionProfile& p,
                            const QuadratureRule& rule, const PropagatorEngine& engine);

// Objective quad_form(f,f,f,f); real and nonnegative by construction.
// Throws if the imaginary part is not below 1e-12.
double objective(const GridFunction& f, const DiffractionProfile& p,
                 const QuadratureRule& rule, const PropagatorEngine& engine);

// Riesz representative of the derivative: 4 * averaged_cubic(f,f,f).
GridFunction objective_gradient(const GridFunction& f, const DiffractionProfile& p,
                                const QuadratureRule& rule, const PropagatorEngine& engine);

// eps * ( d_av/2 <v,-Lv> - 1/4 quad_form(v,v,v,v) ).
double averaged_hamiltonian(const GridFunction& v, const DiffractionProfile& p,
                            const QuadratureRule& rule, const PropagatorEngine& engine,
                            double d_av, double eps);

}  // namespace dms
