#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace dms::detail {

namespace {

struct PlanKey {
    std::vector<int> dims;
    int sign;
    bool operator<(const PlanKey& o) const {
        if (sign != o.sign) return sign < o.sign;
        return dims < o.dims;
    }
};

std::mutex plan_mutex;
std::map<PlanKey, fftw_plan>& plan_cache() {
    static std::map<PlanKey, fftw_plan> cache;
    return cache;
}

fftw_plan get_plan(const std::vector<int>& dims, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    PlanKey key{dims, sign};
    auto it = plan_cache().find(key);
    if (it != plan_cache().end()) return it->second;

    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    std::vector<std::complex<double>> tmp_in(n), tmp_out(n);
    // FFTW_UNALIGNED so the plan can later run on any caller-owned buffers.
    fftw_plan plan = fftw_plan_dft(
        static_cast<int>(dims.size()), dims.data(),
        reinterpret_cast<fftw_complex*>(tmp_in.data()),
        reinterpret_cast<fftw_complex*>(tmp_out.data()),
        sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_cache()[key] = plan;
    return plan;
}

}  // namespace

void dft(const std::vector<int>& dims, int sign,
         const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan plan = get_plan(dims, sign);
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

int next_smooth(int n) {
    auto smooth = [](int m) {
        for (int p : {2, 3, 5})
            while (m % p == 0) m /= p;
        return m == 1;
    };
    while (!smooth(n)) ++n;
    return n;
}

}  // namespace dms::detail
