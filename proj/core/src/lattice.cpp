#include "dms/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dms {

int l1_norm(const Point& x, int dim) {
    int s = 0;
    for (int j = 0; j < dim; ++j) s += std::abs(x[j]);
    return s;
}

GridFunction::GridFunction(int dim, int radius) : dim_(dim), radius_(radius) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("GridFunction: dim must be 1, 2, or 3");
    if (radius < 1) throw std::invalid_argument("GridFunction: radius must be positive");
    std::size_t n = 1;
    for (int j = 0; j < dim; ++j) n *= static_cast<std::size_t>(side());
    values_.assign(n, Complex(0.0, 0.0));
}

GridFunction GridFunction::delta(int dim, int radius, const Point& site) {
    GridFunction f(dim, radius);
    f.set(site, Complex(1.0, 0.0));
    return f;
}

bool GridFunction::in_box(const Point& x) const {
    for (int j = 0; j < dim_; ++j)
        if (x[j] < -radius_ || x[j] > radius_) return false;
    return true;
}

std::size_t GridFunction::index(const Point& x) const {
    std::size_t idx = 0;
    for (int j = 0; j < dim_; ++j)
        idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(x[j] + radius_);
    return idx;
}

Point GridFunction::point(std::size_t idx) const {
    Point x{0, 0, 0};
    for (int j = dim_ - 1; j >= 0; --j) {
        x[j] = static_cast<int>(idx % static_cast<std::size_t>(side())) - radius_;
        idx /= static_cast<std::size_t>(side());
    }
    return x;
}

Complex GridFunction::at(const Point& x) const {
    if (!in_box(x)) return Complex(0.0, 0.0);
    return values_[index(x)];
}

void GridFunction::set(const Point& x, Complex v) {
    if (!in_box(x)) throw std::out_of_range("GridFunction::set: point outside box");
    values_[index(x)] = v;
}

double lp_norm(const GridFunction& f, double p) {
    if (std::isinf(p)) return sup_norm(f);
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    if (p == 2.0) return l2_norm(f);
    double acc = 0.0;
    for (const Complex& v : f.data()) {
        double a = std::abs(v);
        if (a != 0.0) acc += std::pow(a, p);
    }
    return std::pow(acc, 1.0 / p);
}

double l2_norm(const GridFunction& f) {
    double acc = 0.0;
    for (const Complex& v : f.data()) acc += std::norm(v);
    return std::sqrt(acc);
}

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (const Complex& v : f.data()) m = std::max(m, std::abs(v));
    return m;
}

Complex inner_product(const GridFunction& g, const GridFunction& f) {
    if (g.dim() != f.dim() || g.radius() != f.radius())
        throw std::invalid_argument("inner_product: box mismatch");
    Complex acc(0.0, 0.0);
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(g[i]) * f[i];
    return acc;
}

GridFunction laplacian(const GridFunction& f) {
    GridFunction out(f.dim(), f.radius());
    const double diag = -2.0 * f.dim();
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point x = f.point(i);
        Complex acc = diag * f[i];
        for (int j = 0; j < f.dim(); ++j) {
            Point xp = x;
            xp[j] = x[j] + 1;
            acc += f.at(xp);
            xp[j] = x[j] - 1;
            acc += f.at(xp);
        }
        out[i] = acc;
    }
    return out;
}

GridFunction shift(const GridFunction& f, const Point& offset) {
    GridFunction out(f.dim(), f.radius());
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i] == Complex(0.0, 0.0)) continue;
        Point x = f.point(i);
        for (int j = 0; j < f.dim(); ++j) x[j] += offset[j];
        if (!out.in_box(x))
            throw std::domain_error("shift: support would leave the box");
        out[out.index(x)] = f[i];
    }
    return out;
}

GridFunction shift_truncating(const GridFunction& f, const Point& offset) {
    GridFunction out(f.dim(), f.radius());
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i] == Complex(0.0, 0.0)) continue;
        Point x = f.point(i);
        for (int j = 0; j < f.dim(); ++j) x[j] += offset[j];
        if (out.in_box(x)) out[out.index(x)] = f[i];
    }
    return out;
}

SupportSet support_set(const GridFunction& f, double threshold) {
    SupportSet s;
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool on = threshold == 0.0 ? f[i] != Complex(0.0, 0.0) : std::abs(f[i]) > threshold;
        if (on) s.points.push_back(f.point(i));
    }
    return s;
}

double relative_support_threshold(const GridFunction& f) {
    return 1e-14 * sup_norm(f);
}

int support_distance(const GridFunction& f, const GridFunction& g, double threshold) {
    if (f.dim() != g.dim()) throw std::invalid_argument("support_distance: dim mismatch");
    SupportSet a = support_set(f, threshold);
    SupportSet b = support_set(g, threshold);
    if (a.empty() || b.empty())
        throw std::domain_error("support_distance: empty support");
    int best = std::numeric_limits<int>::max();
    for (const Point& x : a.points) {
        for (const Point& y : b.points) {
            int d = 0;
            for (int j = 0; j < f.dim(); ++j) d += std::abs(x[j] - y[j]);
            best = std::min(best, d);
            if (best == 0) return 0;
        }
    }
    return best;
}

bool all_finite(const GridFunction& f) {
    for (const Complex& v : f.data())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double l2_distance(const GridFunction& f, const GridFunction& g) {
    if (f.dim() != g.dim() || f.radius() != g.radius())
        throw std::invalid_argument("l2_distance: box mismatch");
    double acc = 0.0;
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(f[i] - g[i]);
    return std::sqrt(acc);
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    if (a.dim() != b.dim() || a.radius() != b.radius())
        throw std::invalid_argument("operator+: box mismatch");
    GridFunction out = a;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) out[i] += b[i];
    return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    if (a.dim() != b.dim() || a.radius() != b.radius())
        throw std::invalid_argument("operator-: box mismatch");
    GridFunction out = a;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) out[i] -= b[i];
    return out;
}

GridFunction operator*(Complex c, const GridFunction& f) {
    GridFunction out = f;
    for (Complex& v : out.data()) v *= c;
    return out;
}

GridFunction operator*(double c, const GridFunction& f) {
    return Complex(c, 0.0) * f;
}

namespace {

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_field_csv(std::ostream& os, const GridFunction& f) {
    for (int j = 0; j < f.dim(); ++j) os << "x_" << (j + 1) << ",";
    os << "re,im\n";
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point x = f.point(i);
        for (int j = 0; j < f.dim(); ++j) os << x[j] << ",";
        os << format17(f[i].real()) << "," << format17(f[i].imag()) << "\n";
    }
}

GridFunction read_field_csv(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("field csv: empty input");
    int dim = 0;
    {
        std::stringstream hs(header);
        std::string col;
        std::vector<std::string> cols;
        while (std::getline(hs, col, ',')) cols.push_back(col);
        if (cols.size() < 3 || cols[cols.size() - 2] != "re" || cols.back() != "im")
            throw std::runtime_error("field csv: expected header x_1,..,x_d,re,im");
        dim = static_cast<int>(cols.size()) - 2;
    }

    struct Row {
        Point x;
        Complex v;
    };
    std::vector<Row> rows;
    int radius = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string tok;
        Row r{{0, 0, 0}, Complex(0, 0)};
        for (int j = 0; j < dim; ++j) {
            if (!std::getline(ls, tok, ',')) throw std::runtime_error("field csv: short row");
            r.x[j] = std::stoi(tok);
            radius = std::max(radius, std::abs(r.x[j]));
        }
        if (!std::getline(ls, tok, ',')) throw std::runtime_error("field csv: short row");
        double re = std::strtod(tok.c_str(), nullptr);
        if (!std::getline(ls, tok, ',')) throw std::runtime_error("field csv: short row");
        double im = std::strtod(tok.c_str(), nullptr);
        r.v = Complex(re, im);
        rows.push_back(r);
    }
    if (rows.empty()) throw std::runtime_error("field csv: no data rows");
    radius = std::max(radius, 1);
    GridFunction f(dim, radius);
    if (rows.size() != f.size())
        throw std::runtime_error("field csv: incomplete box coverage");
    for (const Row& r : rows) f.set(r.x, r.v);
    return f;
}

void save_field_csv(const std::string& path, const GridFunction& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_field_csv(os, f);
}

GridFunction load_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_field_csv(is);
}

}  // namespace dms
