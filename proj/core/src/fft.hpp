#pragma once

#include <complex>
#include <vector>

namespace dms::detail {

// Rank-d complex DFT (sign -1 forward, +1 backward), unnormalized.
// Plans are cached per (dims, sign) behind a mutex; execution on distinct
// arrays is re-entrant, so concurrent callers are safe.
void dft(const std::vector<int>& dims, int sign,
         const std::complex<double>* in, std::complex<double>* out);

// Smallest integer >= n whose prime factors are all in {2,3,5}.
int next_smooth(int n);

}  // namespace dms::detail
