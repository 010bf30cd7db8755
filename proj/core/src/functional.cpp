#include "dms/functional.hpp"

#include <cmath>
#include <stdexcept>

namespace dms {

namespace {

void check_same_box(const GridFunction& a, const GridFunction& b) {
    if (a.dim() != b.dim() || a.radius() != b.radius())
        throw std::invalid_argument("functional: box mismatch");
}

// Evolve each *distinct* argument once; aliased arguments share the result.
// Aliasing also keeps the diagonal integrand exactly real in floating point.
struct EvolvedQuartet {
    GridFunction u1, u2, u3, u4;

    EvolvedQuartet(const GridFunction& f1, const GridFunction& f2,
                   const GridFunction& f3, const GridFunction& f4,
                   const PropagatorEngine& engine, double theta)
        : u1(engine.evolve(f1, theta)),
          u2(&f2 == &f1 ? u1 : engine.evolve(f2, theta)),
          u3(&f3 == &f1 ? u1 : (&f3 == &f2 ? u2 : engine.evolve(f3, theta))),
          u4(&f4 == &f1 ? u1
                        : (&f4 == &f2 ? u2 : (&f4 == &f3 ? u3 : engine.evolve(f4, theta)))) {}
};

}  // namespace

Complex quad_form(const GridFunction& f1, const GridFunction& f2,
                  const GridFunction& f3, const GridFunction& f4,
                  const DiffractionProfile& p, const QuadratureRule& rule,
                  const PropagatorEngine& engine) {
    check_same_box(f1, f2);
    check_same_box(f1, f3);
    check_same_box(f1, f4);

    Complex total(0.0, 0.0);
    for (const QuadratureNode& node : rule.nodes()) {
        const double theta = p.integral(node.t);
        EvolvedQuartet q(f1, f2, f3, f4, engine, theta);
        Complex node_sum(0.0, 0.0);
        const std::size_t n = q.u1.size();
        for (std::size_t i = 0; i < n; ++i)
            node_sum += std::conj(q.u1[i]) * q.u2[i] * std::conj(q.u3[i]) * q.u4[i];
        total += node.weight * node_sum;
    }
    return total;
}

GridFunction averaged_cubic(const GridFunction& f1, const GridFunction& f2,
                            const GridFunction& f3, const DiffractionProfile& p,
                            const QuadratureRule& rule, const PropagatorEngine& engine) {
    check_same_box(f1, f2);
    check_same_box(f1, f3);

    GridFunction total(f1.dim(), f1.radius());
    for (const QuadratureNode& node : rule.nodes()) {
        const double theta = p.integral(node.t);
        GridFunction u1 = engine.evolve(f1, theta);
        GridFunction u2 = &f2 == &f1 ? u1 : engine.evolve(f2, theta);
        GridFunction u3 = &f3 == &f1 ? u1 : (&f3 == &f2 ? u2 : engine.evolve(f3, theta));

        GridFunction prod(f1.dim(), f1.radius());
        const std::size_t n = prod.size();
        for (std::size_t i = 0; i < n; ++i) prod[i] = u1[i] * std::conj(u2[i]) * u3[i];

        GridFunction back = engine.evolve(prod, -theta);
        for (std::size_t i = 0; i < n; ++i) total[i] += node.weight * back[i];
    }
    return total;
}

double objective(const GridFunction& f, const DiffractionProfile& p,
                 const QuadratureRule& rule, const PropagatorEngine& engine) {
    Complex v = quad_form(f, f, f, f, p, rule, engine);
    if (std::abs(v.imag()) >= 1e-12)
        throw std::runtime_error("objective: diagonal form is not real");
    return v.real();
}

GridFunction objective_gradient(const GridFunction& f, const DiffractionProfile& p,
                                const QuadratureRule& rule, const PropagatorEngine& engine) {
    GridFunction g = averaged_cubic(f, f, f, p, rule, engine);
    for (Complex& v : g.data()) v *= 4.0;
    return g;
}

double averaged_hamiltonian(const GridFunction& v, const DiffractionProfile& p,
                            const QuadratureRule& rule, const PropagatorEngine& engine,
                            double d_av, double eps) {
    double kinetic = 0.0;
    if (d_av != 0.0) {
        GridFunction lv = laplacian(v);
        kinetic = -inner_product(v, lv).real();
    }
    const double quartic = quad_form(v, v, v, v, p, rule, engine).real();
    return eps * (0.5 * d_av * kinetic - 0.25 * quartic);
}

}  // namespace dms
