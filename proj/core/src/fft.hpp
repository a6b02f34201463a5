// Copyright 2026 The spvte Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace spvte::detail {

/// In-place complex FFT of fixed length backed by an FFTW plan.
///
/// Plan creation is serialized internally; execution is reentrant, so one
/// plan per worker is safe. The inverse transform is unnormalized.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }

  void forward(std::vector<std::complex<double>>& data) const;
  void backward(std::vector<std::complex<double>>& data) const;

 private:
  void execute(void* plan, std::vector<std::complex<double>>& data) const;

  std::size_t n_;
  void* forward_;
  void* backward_;
};

/// Signed integer frequency of FFT bin m: m for m < N/2, m - N otherwise.
inline long signed_frequency(std::size_t m, std::size_t n) {
  return m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

}  // namespace spvte::detail
