/*
 * Copyright 2026 The pgmfix Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pgm/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pgm {

GKernel GKernel::perimeter() {
  GKernel g;
  g.kind_ = Kind::perimeter;
  return g;
}

GKernel GKernel::table_raw(std::size_t n, std::vector<double> values) {
  if (n == 0) throw std::invalid_argument("GKernel::table_raw: empty universe");
  if (values.size() != n * n * n) {
    throw std::invalid_argument("GKernel::table_raw: expected n^3 values, got " +
                                std::to_string(values.size()));
  }
  for (double v : values) {
    if (std::isnan(v) || std::isinf(v) || v < 0.0) {
      throw std::invalid_argument("GKernel::table_raw: values must be finite and >= 0");
    }
  }
  GKernel g;
  g.kind_ = Kind::table;
  g.n_ = n;
  g.values_ = std::move(values);
  return g;
}

GKernel GKernel::table_from_entries(std::size_t n,
                                    const std::vector<Entry>& entries) {
  if (n == 0) throw std::invalid_argument("GKernel::table_from_entries: empty universe");
  std::vector<double> values(n * n * n, -1.0);
  auto at = [n, &values](std::size_t i, std::size_t j, std::size_t k) -> double& {
    return values[(i * n + j) * n + k];
  };
  for (const auto& e : entries) {
    if (e.i >= n || e.j >= n || e.k >= n) {
      throw std::invalid_argument("GKernel::table_from_entries: index out of range");
    }
    if (std::isnan(e.value) || std::isinf(e.value) || e.value < 0.0) {
      throw std::invalid_argument("GKernel::table_from_entries: values must be finite and >= 0");
    }
    std::array<std::size_t, 3> idx = {e.i, e.j, e.k};
    std::sort(idx.begin(), idx.end());
    do {
      double& slot = at(idx[0], idx[1], idx[2]);
      if (slot >= 0.0 && slot != e.value) {
        throw std::invalid_argument("GKernel::table_from_entries: conflicting duplicate entry");
      }
      slot = e.value;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  for (double v : values) {
    if (v < 0.0) {
      throw std::invalid_argument("GKernel::table_from_entries: missing entry for some index multiset");
    }
  }
  GKernel g;
  g.kind_ = Kind::table;
  g.n_ = n;
  g.values_ = std::move(values);
  return g;
}

GKernel GKernel::table_from_values(std::span<const double> points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("GKernel::table_from_values: empty universe");
  std::vector<double> values;
  values.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        values.push_back(std::abs(points[i] - points[j]) +
                         std::abs(points[j] - points[k]) +
                         std::abs(points[k] - points[i]));
      }
    }
  }
  return table_raw(n, std::move(values));
}

double GKernel::eval(double x, double y, double z, const Universe& u) const {
  if (kind_ == Kind::perimeter) {
    for (double p : {x, y, z}) {
      if (!u.contains(p)) {
        throw std::invalid_argument("GKernel::eval: point " + std::to_string(p) +
                                    " outside universe");
      }
    }
    return std::abs(x - y) + std::abs(y - z) + std::abs(z - x);
  }
  if (!u.is_finite() || u.size() != n_) {
    throw std::invalid_argument("GKernel::eval: table kernel requires a matching finite universe");
  }
  auto ix = u.index_of(x);
  auto iy = u.index_of(y);
  auto iz = u.index_of(z);
  if (!ix || !iy || !iz) {
    throw std::invalid_argument("GKernel::eval: point outside finite universe");
  }
  return values_[(*ix * n_ + *iy) * n_ + *iz];
}

} // namespace pgm
