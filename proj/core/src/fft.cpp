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

#include "fft.hpp"

#include <mutex>

#include <fftw3.h>

#include "spvte/error.hpp"

namespace spvte::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n), forward_(nullptr), backward_(nullptr) {
  if (n == 0) throw InvalidArgument("FFT length must be positive");
  std::vector<std::complex<double>> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard lock(planner_mutex());
  const int len = static_cast<int>(n);
  forward_ = fftw_plan_dft_1d(len, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  backward_ = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (forward_ == nullptr || backward_ == nullptr) throw NumericalError("FFTW planning failed");
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  if (forward_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  if (backward_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void FftPlan::execute(void* plan, std::vector<std::complex<double>>& data) const {
  if (data.size() != n_) throw InvalidArgument("FFT buffer length mismatch");
  // Plans are FFTW_UNALIGNED, so the new-array interface accepts any buffer.
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan), buf, buf);
}

void FftPlan::forward(std::vector<std::complex<double>>& data) const { execute(forward_, data); }

void FftPlan::backward(std::vector<std::complex<double>>& data) const {
  execute(backward_, data);
}

}  // namespace spvte::detail
