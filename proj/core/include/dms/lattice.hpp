#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace dms {

using Complex = std::complex<double>;

// Lattice site. Coordinates beyond the active dimension are kept at zero.
using Point = std::array<int, 3>;

// |x| = sum_j |x_j|, the metric used for distances and decay radii.
int l1_norm(const Point& x, int dim);

// Complex-valued function on the box {x : |x|_inf <= radius} of Z^d,
// dense storage, implicitly zero outside the box.
class GridFunction {
public:
    GridFunction(int dim, int radius);

    static GridFunction delta(int dim, int radius, const Point& site = {0, 0, 0});

    int dim() const { return dim_; }
    int radius() const { return radius_; }
    int side() const { return 2 * radius_ + 1; }
    std::size_t size() const { return values_.size(); }

    bool in_box(const Point& x) const;
    std::size_t index(const Point& x) const;  // x must be in the box
    Point point(std::size_t idx) const;

    // Zero outside the box; set() rejects points outside.
    Complex at(const Point& x) const;
    void set(const Point& x, Complex v);

    Complex& operator[](std::size_t idx) { return values_[idx]; }
    const Complex& operator[](std::size_t idx) const { return values_[idx]; }

    std::vector<Complex>& data() { return values_; }
    const std::vector<Complex>& data() const { return values_; }

private:
    int dim_;
    int radius_;
    std::vector<Complex> values_;  // index order = lexicographic in (x_1,...,x_d)
};

// (sum |f|^p)^(1/p); p = infinity gives sup|f|. Rejects p < 1.
double lp_norm(const GridFunction& f, double p);
double l2_norm(const GridFunction& f);
double sup_norm(const GridFunction& f);

// sum conj(g(x)) f(x): anti-linear in the first argument.
Complex inner_product(const GridFunction& g, const GridFunction& f);

// Nearest-neighbour stencil sum_{|v|=1} f(x+v) - 2d f(x), zero outside the box.
GridFunction laplacian(const GridFunction& f);

// Translate by offset. Throws if any nonzero value would leave the box.
GridFunction shift(const GridFunction& f, const Point& offset);

// Translate, silently dropping values pushed outside the box (gauge plumbing).
GridFunction shift_truncating(const GridFunction& f, const Point& offset);

struct SupportSet {
    std::vector<Point> points;  // index order of the source field
    bool empty() const { return points.empty(); }
};

// Sites with |f(x)| > threshold; threshold 0 means exact nonzero.
SupportSet support_set(const GridFunction& f, double threshold = 0.0);

// Relative threshold for supports of post-arithmetic fields.
double relative_support_threshold(const GridFunction& f);

// min l1-distance between the two supports. Throws if either is empty.
int support_distance(const GridFunction& f, const GridFunction& g,
                     double threshold = 0.0);

bool all_finite(const GridFunction& f);

double l2_distance(const GridFunction& f, const GridFunction& g);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(Complex c, const GridFunction& f);
GridFunction operator*(double c, const GridFunction& f);

// CSV with header x_1,..,x_d,re,im; one row per lattice point in index order.
void write_field_csv(std::ostream& os, const GridFunction& f);
GridFunction read_field_csv(std::istream& is);
void save_field_csv(const std::string& path, const GridFunction& f);
GridFunction load_field_csv(const std::string& path);

}  // namespace dms
