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

#include "univpep/classes.hpp"

#include <cmath>

namespace univpep {

ClassSpec ClassSpec::hessian_lipschitz(double M) {
  ClassSpec s;
  s.kind = ClassKind::HessianLipschitz;
  s.M = M;
  s.alpha = 0.0;
  s.nonneg = false;
  s.order = 2;
  s.validate();
  return s;
}

ClassSpec ClassSpec::strongly_convex_hessian_lipschitz(double M, double mu) {
  ClassSpec s;
  s.kind = ClassKind::StronglyConvexHessianLipschitz;
  s.M = M;
  s.alpha = 0.0;
  s.mu = mu;
  s.nonneg = true;
  s.order = 2;
  s.validate();
  return s;
}

ClassSpec ClassSpec::self_concordant(double M) {
  ClassSpec s;
  s.kind = ClassKind::SelfConcordant;
  s.M = M;
  s.alpha = 1.5;
  s.nonneg = true;
  s.order = 2;
  s.validate();
  return s;
}

ClassSpec ClassSpec::quasi_self_concordant(double M) {
  ClassSpec s;
  s.kind = ClassKind::QuasiSelfConcordant;
  s.M = M;
  s.alpha = 1.0;
  s.nonneg = true;
  s.order = 2;
  s.validate();
  return s;
}

ClassSpec ClassSpec::generalized_sc(double M, double alpha) {
  ClassSpec s;
  s.kind = ClassKind::GeneralizedSC;
  s.M = M;
  s.alpha = alpha;
  s.nonneg = true;
  s.order = 2;
  s.validate();
  return s;
}

ClassSpec ClassSpec::basic_lipschitz(double M) {
  ClassSpec s;
  s.kind = ClassKind::BasicLipschitz;
  s.M = M;
  s.alpha = 0.0;
  s.nonneg = false;
  s.order = 0;
  s.validate();
  return s;
}

ClassSpec ClassSpec::basic(double M, double alpha, bool nonneg) {
  ClassSpec s;
  s.kind = (alpha == 0.0 && !nonneg) ? ClassKind::BasicLipschitz : ClassKind::GeneralizedSC;
  s.M = M;
  s.alpha = alpha;
  s.nonneg = nonneg;
  s.order = 0;
  return s;
}

ClassSpec ClassSpec::first_order(double M, double alpha, bool nonneg) {
  ClassSpec s = basic(M, alpha, nonneg);
  s.kind = (alpha == 0.0 && !nonneg) ? ClassKind::Smooth : ClassKind::GeneralizedSC;
  s.order = 1;
  return s;
}

ClassSpec ClassSpec::smooth(double M) {
  ClassSpec s;
  s.kind = ClassKind::Smooth;
  s.M = M;
  s.alpha = 0.0;
  s.nonneg = false;
  s.order = 1;
  s.validate();
  return s;
}

void ClassSpec::validate() const {
  if (!(M > 0.0)) throw std::invalid_argument("ClassSpec: M must be > 0");
  if (alpha < 0.0) throw std::invalid_argument("ClassSpec: alpha must be >= 0");
  if (mu < 0.0) throw std::invalid_argument("ClassSpec: mu must be >= 0");
  if (order < 0 || order > 2) throw std::invalid_argument("ClassSpec: order must be 0, 1 or 2");
  switch (kind) {
    case ClassKind::SelfConcordant:
      if (alpha != 1.5 || !nonneg) throw std::invalid_argument("ClassSpec: SelfConcordant locks alpha=3/2, nonneg");
      break;
    case ClassKind::QuasiSelfConcordant:
      if (alpha != 1.0 || !nonneg) throw std::invalid_argument("ClassSpec: QuasiSelfConcordant locks alpha=1, nonneg");
      break;
    case ClassKind::HessianLipschitz:
    case ClassKind::BasicLipschitz:
    case ClassKind::Smooth:
      if (alpha != 0.0) throw std::invalid_argument("ClassSpec: Lipschitz-type kinds lock alpha=0");
      break;
    case ClassKind::StronglyConvexHessianLipschitz:
      if (alpha != 0.0 || !nonneg) throw std::invalid_argument("ClassSpec: StronglyConvexHessianLipschitz locks alpha=0, nonneg");
      break;
    case ClassKind::GeneralizedSC:
      break;
  }
}

std::string ClassSpec::name() const {
  switch (kind) {
    case ClassKind::HessianLipschitz: return "hessian_lipschitz";
    case ClassKind::StronglyConvexHessianLipschitz: return "strongly_convex_hessian_lipschitz";
    case ClassKind::SelfConcordant: return "self_concordant";
    case ClassKind::QuasiSelfConcordant: return "quasi_self_concordant";
    case ClassKind::GeneralizedSC: return "generalized_sc";
    case ClassKind::BasicLipschitz: return "basic_lipschitz";
    case ClassKind::Smooth: return "smooth";
  }
  return "unknown";
}

double beta(double alpha) {
  if (alpha < 0.0) throw std::domain_error("beta: alpha must be >= 0");
  if (alpha == 1.0) return 1.0;
  return 1.0 / (1.0 - alpha);
}

double tilde_transform(double v, double alpha) {
  if (alpha < 0.0) throw std::domain_error("tilde_transform: alpha must be >= 0");
  if (v < 0.0) throw std::domain_error("tilde_transform: v must be >= 0");
  if (alpha == 1.0) {
    if (v == 0.0) throw std::domain_error("tilde_transform: v must be > 0 when alpha = 1");
    return std::log(v);
  }
  if (v == 0.0 && alpha > 1.0)
    throw std::domain_error("tilde_transform: v must be > 0 when alpha > 1");
  if (std::isinf(v)) return alpha > 1.0 ? 0.0 : kInf;
  return std::pow(v, 1.0 - alpha);
}

double nu_transform(double t, double alpha) {
  if (alpha == 1.0) return std::exp(t);
  const double b = beta(alpha);
  if (t == 0.0 && b < 0.0) return kInf;
  if (t < 0.0 && b < 0.0) throw std::domain_error("nu_transform: negative argument with alpha > 1");
  return std::pow(t, b);
}

} // namespace univpep
