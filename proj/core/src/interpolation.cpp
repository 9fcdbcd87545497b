// Copyright 2026 The univpep authors
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

#include "univpep/interpolation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "univpep/conditions.hpp"
#include "univpep/extremal.hpp"

namespace univpep {

namespace {

class Emitter {
 public:
  Emitter(FeasibilityVerdict& v, const CheckOptions& opts) : v_(v), opts_(opts) {}

  void operator()(int i, int j, const char* tag, double residual) {
    if (std::isnan(residual)) residual = kInf; // malformed arithmetic counts as violated
    if (residual > v_.max_residual) v_.max_residual = residual;
    if (residual > opts_.feastol && v_.violations.size() < opts_.max_violations)
      v_.violations.push_back({i, j, tag, residual});
  }

 private:
  FeasibilityVerdict& v_;
  const CheckOptions& opts_;
};

FeasibilityVerdict finish(FeasibilityVerdict v, const CheckOptions& opts) {
  v.feasible = v.max_residual <= opts.feastol;
  return v;
}

// Ordered index pairs to check: every (i, j), i != j, or consecutive pairs in
// x-order both ways.
std::vector<std::pair<int, int>> ordered_pairs(const Dataset& d, bool all_pairs) {
  const int n = static_cast<int>(d.size());
  std::vector<std::pair<int, int>> out;
  if (all_pairs) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) out.emplace_back(i, j);
  } else {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return d.points[a].x < d.points[b].x; });
    for (int k = 0; k + 1 < n; ++k) {
      out.emplace_back(idx[k], idx[k + 1]);
      out.emplace_back(idx[k + 1], idx[k]);
    }
  }
  return out;
}

void require_fields(const Dataset& d, bool f, bool g, bool h, const char* who) {
  if (d.points.empty()) throw std::invalid_argument(std::string(who) + ": empty dataset");
  for (const auto& p : d.points) {
    if (f && !p.f) throw std::invalid_argument(std::string(who) + ": missing f field");
    if (g && !p.g) throw std::invalid_argument(std::string(who) + ": missing g field");
    if (h && !p.h) throw std::invalid_argument(std::string(who) + ": missing h field");
  }
}

// Feasibility of (position, value) data against the order-0 class with the
// given quantities already extracted; shared by all three levels.
void basic_conditions(const Dataset& d, std::vector<double> v, const ClassSpec& spec,
                      const CheckOptions& opts, Emitter& emit, const char* band_tag) {
  const int n = static_cast<int>(v.size());
  const double alpha = spec.alpha;
  if (spec.nonneg) {
    for (int i = 0; i < n; ++i)
      if (v[i] < 0.0)
        throw std::domain_error("check: negative value for a nonnegative class");
  }
  if (alpha >= 1.0) {
    const bool all_zero = std::all_of(v.begin(), v.end(), [](double t) { return t == 0.0; });
    if (all_zero) return; // identically-zero member
    for (int i = 0; i < n; ++i) {
      if (v[i] == 0.0) {
        const double worst = *std::max_element(v.begin(), v.end());
        emit(i, -1, "positivity", worst);
        return;
      }
    }
  }
  std::vector<double> t(v.size());
  for (int i = 0; i < n; ++i)
    t[i] = alpha == 0.0 ? v[i] : tilde_transform(v[i], alpha); // alpha 0 admits signed values
  for (const auto& [i, j] : ordered_pairs(d, opts.all_pairs)) {
    if (i < j)
      emit(i, j, band_tag,
           cond::lipschitz_band(d.points[i].x, t[i], d.points[j].x, t[j], spec.M));
  }
}

} // namespace

FeasibilityVerdict check_basic(const Dataset& data, const ClassSpec& spec,
                               const CheckOptions& opts) {
  spec.validate();
  if (spec.order != 0) throw std::invalid_argument("check_basic: class order must be 0");
  require_fields(data, true, false, false, "check_basic");
  FeasibilityVerdict verdict;
  Emitter emit(verdict, opts);
  std::vector<double> v;
  for (const auto& p : data.points) v.push_back(*p.f);
  basic_conditions(data, std::move(v), spec, opts, emit, "tilde_lipschitz");
  return finish(std::move(verdict), opts);
}

FeasibilityVerdict check_first_order(const Dataset& data, const ClassSpec& spec,
                                     const CheckOptions& opts) {
  spec.validate();
  if (spec.order != 1) throw std::invalid_argument("check_first_order: class order must be 1");
  require_fields(data, true, true, false, "check_first_order");
  const double M = spec.M;
  const double alpha = spec.alpha;
  const int n = static_cast<int>(data.size());

  FeasibilityVerdict verdict;
  Emitter emit(verdict, opts);

  if (spec.nonneg) {
    for (int i = 0; i < n; ++i)
      if (*data.points[i].g < 0.0)
        throw std::domain_error("check_first_order: negative derivative for nonnegative class");
  }

  if (alpha == 1.0) {
    for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
      const auto &pi = data.points[i], &pj = data.points[j];
      emit(i, j, "value_lower",
           cond::qsc_pair_lower(pi.x, *pi.f, *pi.g, pj.x, *pj.f, *pj.g, M));
    }
    return finish(std::move(verdict), opts);
  }

  if (alpha > 1.0) {
    // derivative hitting zero forces the constant member
    bool any_zero = false, all_zero = true;
    for (const auto& p : data.points) {
      if (*p.g == 0.0)
        any_zero = true;
      else
        all_zero = false;
    }
    if (any_zero) {
      if (!all_zero) {
        double worst = 0.0;
        for (const auto& p : data.points) worst = std::max(worst, *p.g);
        emit(-1, -1, "positivity", worst);
      } else {
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            emit(i, j, "degenerate_equal_values",
                 std::abs(*data.points[i].f - *data.points[j].f));
      }
      return finish(std::move(verdict), opts);
    }
  }

  if (alpha != 0.0 && !spec.nonneg)
    throw std::invalid_argument("check_first_order: alpha > 0 requires the nonnegative flag");

  const double b = beta(alpha);
  const double s = b > 0.0 ? 1.0 : -1.0;
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i)
    t[i] = alpha == 0.0 ? *data.points[i].g : std::pow(*data.points[i].g, 1.0 / b);

  // only the sign-free Lipschitz-derivative class has a single-case envelope
  const bool always_lower = !spec.nonneg;
  const bool log_case = std::abs(b + 1.0) < 1e-9; // alpha = 2: antiderivative is a log
  for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
    const auto &pi = data.points[i], &pj = data.points[j];
    const double dx = pj.x - pi.x;
    if (i < j)
      emit(i, j, "tilde_lipschitz", cond::lipschitz_band(pi.x, t[i], pj.x, t[j], M));
    if (log_case) {
      const auto bounds = basic_pair_value_bounds(std::min(pi.x, pj.x),
                                                  pi.x < pj.x ? *pi.g : *pj.g,
                                                  std::max(pi.x, pj.x),
                                                  pi.x < pj.x ? *pj.g : *pi.g,
                                                  ClassSpec::basic(M, alpha, spec.nonneg));
      const double lower = pi.x < pj.x ? bounds.lower : -bounds.upper;
      emit(i, j, "value_lower", lower - (*pj.f - *pi.f));
      continue;
    }
    if (always_lower || t[i] + t[j] >= s * M * dx) {
      const double arg = t[i] + t[j] - s * M * dx;
      const double rhs = s / (M * (b + 1.0)) *
                         (std::pow(t[i], b + 1.0) + std::pow(t[j], b + 1.0) -
                          std::pow(2.0, -b) * std::pow(arg, b + 1.0));
      emit(i, j, "value_lower", rhs - (*pj.f - *pi.f));
    }
    if (alpha < 1.0 && spec.nonneg && t[i] + t[j] <= M * dx) {
      const double rhs =
          (std::pow(t[i], b + 1.0) + std::pow(t[j], b + 1.0)) / (M * (b + 1.0));
      emit(i, j, "value_lower_plateau", rhs - (*pj.f - *pi.f));
    }
  }
  return finish(std::move(verdict), opts);
}

FeasibilityVerdict check_second_order_no_values(const Dataset& data, const ClassSpec& spec,
                                                const CheckOptions& opts) {
  spec.validate();
  if (spec.order != 2)
    throw std::invalid_argument("check_second_order_no_values: class order must be 2");
  require_fields(data, false, true, true, "check_second_order_no_values");
  const double M = spec.M;
  const int n = static_cast<int>(data.size());

  FeasibilityVerdict verdict;
  Emitter emit(verdict, opts);

  switch (spec.kind) {
    case ClassKind::HessianLipschitz: {
      for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
        const auto &pi = data.points[i], &pj = data.points[j];
        emit(i, j, "grad_lower",
             cond::hl_pair_lower(pi.x, *pi.g, *pi.h, pj.x, *pj.g, *pj.h, M));
        // the curvature band is implied, but only up to the square root of the
        // pairwise slack; checking it directly keeps near-feasible data honest
        if (i < j)
          emit(i, j, "hess_band", cond::lipschitz_band(pi.x, *pi.h, pj.x, *pj.h, M));
      }
      break;
    }
    case ClassKind::StronglyConvexHessianLipschitz: {
      for (int i = 0; i < n; ++i) {
        if (*data.points[i].h < 0.0)
          throw std::domain_error("check_second_order_no_values: negative h for convex class");
        emit(i, -1, "hess_floor", spec.mu - *data.points[i].h);
      }
      for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
        const auto &pi = data.points[i], &pj = data.points[j];
        emit(i, j, "grad_lower",
             cond::hl_pair_lower(pi.x, *pi.g, *pi.h, pj.x, *pj.g, *pj.h, M));
        emit(i, j, "grad_lower_floor",
             cond::schl_pair_conditional(pi.x, *pi.g, *pi.h, pj.x, *pj.g, *pj.h, M, spec.mu));
        if (i < j)
          emit(i, j, "hess_band", cond::lipschitz_band(pi.x, *pi.h, pj.x, *pj.h, M));
      }
      break;
    }
    case ClassKind::SelfConcordant: {
      bool any_zero = false, all_zero = true;
      for (const auto& p : data.points) {
        if (*p.h <= 0.0)
          any_zero = true;
        else
          all_zero = false;
      }
      if (any_zero) {
        for (const auto& p : data.points)
          if (*p.h < 0.0)
            throw std::domain_error("check_second_order_no_values: negative h for SC class");
        if (!all_zero) {
          double worst = 0.0;
          for (const auto& p : data.points) worst = std::max(worst, *p.h);
          emit(-1, -1, "positivity", worst);
        } else {
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
              emit(i, j, "degenerate_equal_grads",
                   std::abs(*data.points[i].g - *data.points[j].g));
        }
        break;
      }
      std::vector<double> t(n);
      for (int i = 0; i < n; ++i) t[i] = 1.0 / std::sqrt(*data.points[i].h);
      for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
        const auto &pi = data.points[i], &pj = data.points[j];
        if (i < j)
          emit(i, j, "tilde_lipschitz", cond::lipschitz_band(pi.x, t[i], pj.x, t[j], M));
        emit(i, j, "grad_lower",
             cond::sc_pair_lower(pi.x, *pi.g, t[i], pj.x, *pj.g, t[j], M));
      }
      break;
    }
    case ClassKind::QuasiSelfConcordant: {
      for (int i = 0; i < n; ++i)
        if (*data.points[i].h < 0.0)
          throw std::domain_error("check_second_order_no_values: negative h for QSC class");
      for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
        const auto &pi = data.points[i], &pj = data.points[j];
        emit(i, j, "grad_lower",
             cond::qsc_pair_lower(pi.x, *pi.g, *pi.h, pj.x, *pj.g, *pj.h, M));
        if (i < j && *pi.h > 0.0 && *pj.h > 0.0)
          emit(i, j, "hess_band",
               cond::lipschitz_band(pi.x, std::log(*pi.h), pj.x, std::log(*pj.h), M));
      }
      break;
    }
    case ClassKind::GeneralizedSC: {
      // second-order data is first-order data for the derivative
      Dataset lifted;
      for (const auto& p : data.points)
        lifted.points.push_back(SecondOrderPoint::xfg(p.x, *p.g, *p.h));
      auto sub = check_first_order(lifted, ClassSpec::first_order(M, spec.alpha, spec.nonneg),
                                   opts);
      for (auto& viol : sub.violations) emit(viol.i, viol.j, viol.tag.c_str(), viol.residual);
      if (sub.max_residual > verdict.max_residual) verdict.max_residual = sub.max_residual;
      break;
    }
    default:
      throw std::invalid_argument("check_second_order_no_values: unsupported class kind");
  }
  return finish(std::move(verdict), opts);
}

FeasibilityVerdict check_second_order_with_values(const Dataset& data, const ClassSpec& spec,
                                                  const CheckOptions& opts) {
  spec.validate();
  if (spec.kind != ClassKind::HessianLipschitz)
    throw std::invalid_argument(
        "check_second_order_with_values: only the Hessian-Lipschitz class carries value "
        "conditions");
  require_fields(data, true, true, true, "check_second_order_with_values");
  const double M = spec.M;

  FeasibilityVerdict verdict;
  Emitter emit(verdict, opts);
  for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
    const auto &pi = data.points[i], &pj = data.points[j];
    const auto r = cond::hl_pair_with_values(pi.x, *pi.f, *pi.g, *pi.h, pj.x, *pj.f, *pj.g,
                                             *pj.h, M);
    if (i < j) emit(i, j, "hess_band", r.band);
    if (r.limit_val == -kInf) {
      emit(i, j, "value_lower", r.lower);
    } else {
      emit(i, j, "limit_grad_eq", r.lower);
      emit(i, j, "limit_val_eq", r.limit_val);
    }
#ifndef NDEBUG
    // the upper bound and the derivative-level condition are implied; spot
    // check the redundancy on feasible pairs
    if (r.band <= opts.feastol && r.lower <= opts.feastol) {
      const auto rev = cond::hl_pair_with_values(pj.x, *pj.f, *pj.g, *pj.h, pi.x, *pi.f, *pi.g,
                                                 *pi.h, M);
      if (rev.lower <= opts.feastol && rev.band <= opts.feastol) {
        assert(cond::hl_pair_with_values_upper(pi.x, *pi.f, *pi.g, *pi.h, pj.x, *pj.f, *pj.g,
                                               *pj.h, M) <= 1e2 * opts.feastol + 1e-12);
        assert(cond::hl_pair_lower(pi.x, *pi.g, *pi.h, pj.x, *pj.g, *pj.h, M) <=
               1e2 * opts.feastol + 1e-12);
      }
    }
#endif
  }
  return finish(std::move(verdict), opts);
}

FeasibilityVerdict classical_necessary(const Dataset& data, const ClassSpec& spec,
                                       ClassicalCondition which, const CheckOptions& opts) {
  spec.validate();
  FeasibilityVerdict verdict;
  Emitter emit(verdict, opts);
  const double M = spec.M;
  switch (which) {
    case ClassicalCondition::QscExisting:
    case ClassicalCondition::QscImproved: {
      require_fields(data, false, true, true, "classical_necessary");
      for (int i = 0; i < static_cast<int>(data.size()); ++i)
        emit(i, -1, "hess_sign", -*data.points[i].h);
      for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
        const auto &pi = data.points[i], &pj = data.points[j];
        const double res =
            which == ClassicalCondition::QscExisting
                ? cond::qsc_classical(pi.x, *pi.g, *pi.h, pj.x, *pj.g, M)
                : cond::qsc_classical_improved(pi.x, *pi.g, *pi.h, pj.x, *pj.g, *pj.h, M);
        emit(i, j, "grad_upper", res);
      }
      break;
    }
    case ClassicalCondition::CubicBound: {
      require_fields(data, true, true, true, "classical_necessary");
      for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
        const auto &pi = data.points[i], &pj = data.points[j];
        emit(i, j, "cubic_bound",
             cond::hl_cubic_bound(pi.x, *pi.f, *pi.g, *pi.h, pj.x, *pj.f, M));
      }
      break;
    }
    case ClassicalCondition::CubicImproved: {
      require_fields(data, true, true, true, "classical_necessary");
      for (const auto& [i, j] : ordered_pairs(data, opts.all_pairs)) {
        const auto &pi = data.points[i], &pj = data.points[j];
        emit(i, j, "cubic_bound_improved",
             cond::hl_cubic_bound_improved(pi.x, *pi.f, *pi.g, *pi.h, pj.x, *pj.f, *pj.g, M));
      }
      break;
    }
  }
  return finish(std::move(verdict), opts);
}

FeasibilityVerdict check_dataset(const Dataset& data, const ClassSpec& spec,
                                 const CheckOptions& opts) {
  switch (spec.order) {
    case 0: return check_basic(data, spec, opts);
    case 1: return check_first_order(data, spec, opts);
    default:
      if (spec.kind == ClassKind::HessianLipschitz && data.has_values())
        return check_second_order_with_values(data, spec, opts);
      return check_second_order_no_values(data, spec, opts);
  }
}

} // namespace univpep
