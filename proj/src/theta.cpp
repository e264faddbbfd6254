// Copyright 2026 The Tsirelson Authors
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

#include "tsirelson/theta.hpp"

#include <mpfr.h>

#include <mutex>
#include <unordered_map>

#include "tsirelson/error.hpp"

namespace tsirelson {

struct ThetaSequence::Cache {
  std::mutex mutex;
  std::unordered_map<Index, Enclosure> values;
};

std::string to_string(ThetaKind kind) {
  switch (kind) {
    case ThetaKind::ReciprocalShift:
      return "reciprocal-shift";
    case ThetaKind::Geometric:
      return "geometric";
    case ThetaKind::LogEnclosure:
      return "log-enclosure";
    case ThetaKind::Table:
      return "table";
  }
  return "unknown";
}

ThetaSequence ThetaSequence::reciprocal_shift() {
  ThetaSequence t;
  t.kind_ = ThetaKind::ReciprocalShift;
  return t;
}

ThetaSequence ThetaSequence::geometric(Rational ratio) {
  if (sgn(ratio) <= 0 || ratio >= 1) throw InputError("geometric theta needs a ratio in (0,1)");
  ThetaSequence t;
  t.kind_ = ThetaKind::Geometric;
  t.ratio_ = std::move(ratio);
  t.cache_ = std::make_shared<Cache>();
  return t;
}

ThetaSequence ThetaSequence::log_enclosure(int precision_bits) {
  if (precision_bits < 16 || precision_bits > 1 << 16) throw InputError("log enclosure precision out of range");
  ThetaSequence t;
  t.kind_ = ThetaKind::LogEnclosure;
  t.precision_bits_ = precision_bits;
  t.cache_ = std::make_shared<Cache>();
  return t;
}

ThetaSequence ThetaSequence::table(std::vector<Rational> values, const ThetaSequence& tail) {
  for (const auto& v : values) {
    if (sgn(v) <= 0 || v > 1) throw InputError("table theta values must lie in (0,1]");
  }
  ThetaSequence t;
  t.kind_ = ThetaKind::Table;
  t.table_ = std::move(values);
  t.tail_ = std::make_shared<const ThetaSequence>(tail);
  return t;
}

namespace {

Rational mpfr_to_rational(const mpfr_t x) {
  mpz_class mantissa;
  mpfr_exp_t exp = mpfr_get_z_2exp(mantissa.get_mpz_t(), x);
  Rational r(mantissa);
  if (exp >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  return r;
}

}  // namespace

ThetaSequence::Enclosure ThetaSequence::enclosure(Index n) const {
  if (n < 1) throw InputError("theta is indexed from 1");
  switch (kind_) {
    case ThetaKind::ReciprocalShift: {
      Rational v(1, static_cast<unsigned long>(n + 1));
      return {v, v};
    }
    case ThetaKind::Table:
      if (static_cast<std::size_t>(n) <= table_.size()) {
        const Rational& v = table_[static_cast<std::size_t>(n - 1)];
        return {v, v};
      }
      return tail_->enclosure(n);
    case ThetaKind::Geometric:
    case ThetaKind::LogEnclosure:
      break;
  }
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(n); it != cache_->values.end()) return it->second;
  }
  Enclosure e;
  if (kind_ == ThetaKind::Geometric) {
    Rational v = pow(ratio_, static_cast<unsigned>(n));
    e = {v, v};
  } else {
    // 1/log2(n+1): round log2 up for the lower end, down for the upper end.
    mpfr_t arg, up, down;
    mpfr_inits2(precision_bits_, arg, up, down, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_si(arg, n + 1, MPFR_RNDN);  // exact for n + 1 < 2^precision
    mpfr_log2(up, arg, MPFR_RNDU);
    mpfr_log2(down, arg, MPFR_RNDD);
    Rational log_up = mpfr_to_rational(up);
    Rational log_down = mpfr_to_rational(down);
    mpfr_clears(arg, up, down, static_cast<mpfr_ptr>(nullptr));
    e = {Rational(1) / log_up, Rational(1) / log_down};
    e.lo.canonicalize();
    e.hi.canonicalize();
  }
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(n, e);
  return e;
}

Rational ThetaSequence::value(Index n) const { return enclosure(n).lo; }
Rational ThetaSequence::lower(Index n) const { return enclosure(n).lo; }
Rational ThetaSequence::upper(Index n) const { return enclosure(n).hi; }

bool ThetaSequence::is_exact() const {
  if (kind_ == ThetaKind::LogEnclosure) return false;
  if (kind_ == ThetaKind::Table) return tail_->is_exact();
  return true;
}

ThetaSequence ThetaSequence::widened() const {
  switch (kind_) {
    case ThetaKind::LogEnclosure:
      return log_enclosure(precision_bits_ * 2);
    case ThetaKind::Table:
      return table(table_, tail_->widened());
    default:
      return *this;
  }
}

bool operator==(const ThetaSequence& a, const ThetaSequence& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case ThetaKind::ReciprocalShift:
      return true;
    case ThetaKind::Geometric:
      return a.ratio_ == b.ratio_;
    case ThetaKind::LogEnclosure:
      return a.precision_bits_ == b.precision_bits_;
    case ThetaKind::Table:
      return a.table_ == b.table_ && *a.tail_ == *b.tail_;
  }
  return false;
}

std::optional<std::pair<Index, Index>> find_regularity_violation(const ThetaSequence& theta, Ladder ladder,
                                                                 Index bound) {
  for (Index n = 1; n <= bound; ++n) {
    for (Index m = n; m <= bound; ++m) {
      Index target = ladder == Ladder::S ? n + m : n * m;
      if (theta.value(n) * theta.value(m) > theta.value(target)) return std::make_pair(n, m);
    }
  }
  return std::nullopt;
}

std::optional<Index> find_monotonicity_violation(const ThetaSequence& theta, Index bound) {
  for (Index n = 1; n <= bound; ++n) {
    Rational v = theta.value(n);
    if (sgn(v) <= 0 || v > 1) return n;
    if (n > 1 && !(v < theta.value(n - 1))) return n;
  }
  return std::nullopt;
}

}  // namespace tsirelson
