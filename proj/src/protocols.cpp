// Copyright 2026 The biompc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "biompc/protocols.hpp"

#include <chrono>

namespace biompc {

namespace {

using u128 = unsigned __int128;

void require_below_half(u128 value, std::uint64_t p, const char* what) {
  if (2 * value >= static_cast<u128>(p)) {
    throw std::invalid_argument(std::string("range-fit violation: ") + what +
                                " can reach p/2 for this field");
  }
}

std::vector<FieldElement> iris_elements(const FieldParams& f,
                                        const IrisTemplate& tpl) {
  std::vector<FieldElement> out;
  out.reserve(2 * tpl.length());
  for (std::uint8_t b : tpl.bits) {
    out.push_back(fe(f, b));
  }
  for (std::uint8_t m : tpl.mask) {
    out.push_back(fe(f, m));
  }
  return out;
}

std::vector<FieldElement> face_elements(const FieldParams& f,
                                        const FaceTemplate& tpl) {
  std::vector<FieldElement> out;
  out.reserve(tpl.k());
  for (std::uint64_t v : tpl.features) {
    out.push_back(fe(f, v));
  }
  return out;
}

AuthShare sum_shares(PartySession& s, std::span<const AuthShare> xs) {
  AuthShare acc = s.zero_share();
  for (const AuthShare& x : xs) {
    acc = s.add(acc, x);
  }
  return acc;
}

/// Three batched layers of the shared Hamming-distance fraction.
/// Consumes 3N triples: N for the XORs, N for the mask ORs (same two
/// flushes), and N for masking the XORs. den reuses the ORs linearly.
struct IrisDistance {
  AuthShare num;
  AuthShare den;
};

IrisDistance iris_distance_shares(PartySession& s,
                                  std::span<const AuthShare> f1,
                                  std::span<const AuthShare> m1,
                                  std::span<const AuthShare> f2,
                                  std::span<const AuthShare> m2) {
  const std::size_t n = f1.size();
  const FieldElement one = s.element(1);
  const FieldElement two = s.element(2);

  std::vector<AuthShare> lhs;
  std::vector<AuthShare> rhs;
  lhs.reserve(2 * n);
  rhs.reserve(2 * n);
  lhs.insert(lhs.end(), f1.begin(), f1.end());
  lhs.insert(lhs.end(), m1.begin(), m1.end());
  rhs.insert(rhs.end(), f2.begin(), f2.end());
  rhs.insert(rhs.end(), m2.begin(), m2.end());
  std::vector<AuthShare> prods = s.mul_batch(lhs, rhs);

  std::vector<AuthShare> xors(n);
  std::vector<AuthShare> ors(n);
  for (std::size_t i = 0; i < n; ++i) {
    // a xor b = a + b - 2ab; a or b = a + b - ab
    xors[i] = s.sub(s.add(f1[i], f2[i]), s.scale(two, prods[i]));
    ors[i] = s.sub(s.add(m1[i], m2[i]), prods[n + i]);
  }

  std::vector<AuthShare> usable(n);
  for (std::size_t i = 0; i < n; ++i) {
    usable[i] = s.add_public(one, s.scale(fe_neg(one), ors[i]));  // 1 - or
  }
  std::vector<AuthShare> masked = s.mul_batch(xors, usable);

  IrisDistance d;
  d.num = sum_shares(s, masked);
  AuthShare or_sum = sum_shares(s, ors);
  d.den = s.add_public(s.element(static_cast<std::uint64_t>(n)),
                       s.scale(fe_neg(one), or_sum));
  return d;
}

constexpr std::uint64_t kUnset = UINT64_MAX;

struct PhaseMarks {
  std::uint64_t start = 0;
  std::uint64_t after_input = kUnset;
  std::uint64_t before_output = kUnset;

  void close_open_phases(std::uint64_t now) {
    if (after_input == kUnset) after_input = now;
    if (before_output == kUnset) before_output = now;
  }
};

void finish_output(ProtocolOutput& out, PartySession& s,
                   const PhaseMarks& marks,
                   std::chrono::steady_clock::time_point t0) {
  out.stats = s.stats();
  out.input_rounds = marks.after_input - marks.start;
  out.body_rounds = marks.before_output - marks.after_input;
  out.output_rounds = out.stats.channel.rounds_sent - marks.before_output;
  out.online_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
}

}  // namespace

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Accept:
      return "accept";
    case Outcome::Reject:
      return "reject";
    case Outcome::Abort:
      return "abort";
  }
  return "?";
}

void check_iris_range(const FieldParams& field, const IrisConfig& cfg) {
  if (cfg.n_bits == 0) {
    throw std::invalid_argument("iris: N must be positive");
  }
  if (cfg.t_den == 0) {
    throw std::invalid_argument("iris: threshold denominator must be positive");
  }
  if (cfg.threshold_public && (cfg.t_num == 0 || cfg.t_num >= cfg.t_den)) {
    throw std::invalid_argument("iris: threshold must lie in (0, 1)");
  }
  // num*t_den and t_num*den are both bounded by N*t_den since t < 1.
  require_below_half(static_cast<u128>(cfg.n_bits) * cfg.t_den, field.p(),
                     "N * t_den");
}

void check_face_range(const FieldParams& field, const FaceConfig& cfg) {
  if (cfg.k < 1 || cfg.k > kMaxFaceFeatures) {
    throw std::invalid_argument("face: k must be in [1, 10]");
  }
  const u128 max_diff = (u128{1} << cfg.feature_bits) - 1;
  require_below_half(static_cast<u128>(cfg.k) * max_diff * max_diff, field.p(),
                     "maximum SED");
  require_below_half(cfg.threshold_sq, field.p(), "squared threshold");
}

void check_fusion_range(const FieldParams& field, const FusionConfig& cfg) {
  if (cfg.n_bits == 0 || cfg.k < 1 || cfg.k > kMaxFaceFeatures) {
    throw std::invalid_argument("fusion: bad template dimensions");
  }
  if (cfg.face_range_max == 0) {
    throw std::invalid_argument("fusion: face range bound must be positive");
  }
  if (cfg.fusion.rhs_scale == 0) {
    throw std::invalid_argument("fusion: threshold scale is zero");
  }
  const u128 max_diff = (u128{1} << cfg.feature_bits) - 1;
  const u128 sed_max = static_cast<u128>(cfg.k) * max_diff * max_diff;
  const u128 n = cfg.n_bits;
  const u128 range = cfg.face_range_max;
  const u128 lhs = static_cast<u128>(cfg.fusion.lhs_scale) *
                   (static_cast<u128>(cfg.fusion.alpha_q) * n * range +
                    static_cast<u128>(cfg.fusion.beta_q) * sed_max * n);
  const u128 rhs = static_cast<u128>(cfg.fusion.rhs_scale) * n * range;
  require_below_half(lhs, field.p(), "fused score");
  require_below_half(rhs, field.p(), "fused threshold side");
}

ProtocolOutput run_iris(PartySession& session, const IrisConfig& cfg,
                        const IrisTemplate& local_template) {
  const FieldParams& f = session.field();
  validate_iris(local_template);
  if (local_template.length() != cfg.n_bits) {
    throw std::invalid_argument("iris template length does not match config");
  }
  check_iris_range(f, cfg);

  const auto t0 = std::chrono::steady_clock::now();
  const bool is_server = session.party() == PartyId::P1;
  const std::size_t n = cfg.n_bits;
  ProtocolOutput out;
  PhaseMarks marks;
  marks.start = session.stats().channel.rounds_sent;

  try {
    const std::size_t client_count = 2 * n;
    const std::size_t server_count = 2 * n + (cfg.threshold_public ? 0 : 1);

    std::vector<FieldElement> mine = iris_elements(f, local_template);
    if (is_server && !cfg.threshold_public) {
      if (cfg.t_num == 0 || cfg.t_num >= cfg.t_den) {
        throw std::invalid_argument("iris: threshold must lie in (0, 1)");
      }
      mine.push_back(fe(f, cfg.t_num));
    }

    std::vector<AuthShare> client_shares, server_shares;
    if (is_server) {
      client_shares = session.accept_inputs(client_count);
      server_shares = session.provide_inputs(mine);
    } else {
      client_shares = session.provide_inputs(mine);
      server_shares = session.accept_inputs(server_count);
    }
    marks.after_input = session.stats().channel.rounds_sent;

    std::span<const AuthShare> f1(client_shares.data(), n);
    std::span<const AuthShare> m1(client_shares.data() + n, n);
    std::span<const AuthShare> f2(server_shares.data(), n);
    std::span<const AuthShare> m2(server_shares.data() + n, n);

    IrisDistance d = iris_distance_shares(session, f1, m1, f2, m2);

    // num < t*den  <=>  t_den*num < t_num*den
    AuthShare lhs = session.scale(fe(f, cfg.t_den), d.num);
    AuthShare rhs = cfg.threshold_public
                        ? session.scale(fe(f, cfg.t_num), d.den)
                        : session.mul(server_shares[2 * n], d.den);
    ComparisonResult cmp = session.compare_less(lhs, rhs);
    marks.before_output = session.stats().channel.rounds_sent;

    FieldElement bit = session.open_output(cmp.bit);
    out.decision = static_cast<int>(bit.value);
    out.outcome = bit.value == 1 ? Outcome::Accept : Outcome::Reject;
  } catch (const AbortError&) {
    out.outcome = Outcome::Abort;
    out.decision = -1;
    marks.close_open_phases(session.stats().channel.rounds_sent);
  }
  finish_output(out, session, marks, t0);
  return out;
}

ProtocolOutput run_face(PartySession& session, const FaceConfig& cfg,
                        const FaceTemplate& local_template) {
  const FieldParams& f = session.field();
  validate_face(local_template);
  if (local_template.k() != cfg.k ||
      local_template.feature_bits != cfg.feature_bits) {
    throw std::invalid_argument("face template does not match config");
  }
  check_face_range(f, cfg);

  const auto t0 = std::chrono::steady_clock::now();
  const bool is_server = session.party() == PartyId::P1;
  ProtocolOutput out;
  PhaseMarks marks;
  marks.start = session.stats().channel.rounds_sent;

  try {
    std::vector<FieldElement> mine = face_elements(f, local_template);
    std::vector<AuthShare> client_shares, server_shares;
    if (is_server) {
      client_shares = session.accept_inputs(cfg.k);
      server_shares = session.provide_inputs(mine);
    } else {
      client_shares = session.provide_inputs(mine);
      server_shares = session.accept_inputs(cfg.k);
    }
    marks.after_input = session.stats().channel.rounds_sent;

    std::vector<AuthShare> diffs(cfg.k);
    for (std::size_t i = 0; i < cfg.k; ++i) {
      diffs[i] = session.sub(client_shares[i], server_shares[i]);
    }
    std::vector<AuthShare> squares = session.square_batch(diffs);
    AuthShare sed = sum_shares(session, squares);

    AuthShare threshold = session.constant_share(fe(f, cfg.threshold_sq));
    ComparisonResult cmp = session.compare_less(sed, threshold);
    marks.before_output = session.stats().channel.rounds_sent;

    FieldElement bit = session.open_output(cmp.bit);
    out.decision = static_cast<int>(bit.value);
    out.outcome = bit.value == 1 ? Outcome::Accept : Outcome::Reject;
  } catch (const AbortError&) {
    out.outcome = Outcome::Abort;
    out.decision = -1;
    marks.close_open_phases(session.stats().channel.rounds_sent);
  }
  finish_output(out, session, marks, t0);
  return out;
}

ProtocolOutput run_fusion(PartySession& session, const FusionConfig& cfg,
                          const FusionInput& local_input) {
  const FieldParams& f = session.field();
  validate_iris(local_input.iris);
  validate_face(local_input.face);
  if (local_input.iris.length() != cfg.n_bits ||
      local_input.face.k() != cfg.k ||
      local_input.face.feature_bits != cfg.feature_bits) {
    throw std::invalid_argument("fusion templates do not match config");
  }
  check_fusion_range(f, cfg);

  const auto t0 = std::chrono::steady_clock::now();
  const bool is_server = session.party() == PartyId::P1;
  const std::size_t n = cfg.n_bits;
  const std::size_t k = cfg.k;
  ProtocolOutput out;
  PhaseMarks marks;
  marks.start = session.stats().channel.rounds_sent;

  try {
    const bool private_range = !cfg.range_public;
    const std::size_t client_count = 2 * n + k;
    const std::size_t server_count = 2 * n + k + (private_range ? 1 : 0);

    std::vector<FieldElement> mine = iris_elements(f, local_input.iris);
    {
      std::vector<FieldElement> face = face_elements(f, local_input.face);
      mine.insert(mine.end(), face.begin(), face.end());
    }
    if (is_server && private_range) {
      if (local_input.face_range == 0 ||
          local_input.face_range > cfg.face_range_max) {
        throw std::invalid_argument(
            "fusion: face range must lie in [1, face_range_max]");
      }
      mine.push_back(fe(f, local_input.face_range));
    }

    std::vector<AuthShare> client_shares, server_shares;
    if (is_server) {
      client_shares = session.accept_inputs(client_count);
      server_shares = session.provide_inputs(mine);
    } else {
      client_shares = session.provide_inputs(mine);
      server_shares = session.accept_inputs(server_count);
    }
    marks.after_input = session.stats().channel.rounds_sent;

    std::span<const AuthShare> f1(client_shares.data(), n);
    std::span<const AuthShare> m1(client_shares.data() + n, n);
    std::span<const AuthShare> a(client_shares.data() + 2 * n, k);
    std::span<const AuthShare> f2(server_shares.data(), n);
    std::span<const AuthShare> m2(server_shares.data() + n, n);
    std::span<const AuthShare> b(server_shares.data() + 2 * n, k);

    IrisDistance d = iris_distance_shares(session, f1, m1, f2, m2);

    std::vector<AuthShare> diffs(k);
    for (std::size_t i = 0; i < k; ++i) {
      diffs[i] = session.sub(a[i], b[i]);
    }
    AuthShare sed = sum_shares(session, session.square_batch(diffs));

    // The three cross-modal products (plus reserved filler products that
    // keep the triple count at the advertised multimodal total).
    AuthShare num_r, sed_den, den_r;
    std::vector<AuthShare> lhs, rhs;
    if (private_range) {
      const AuthShare& range = server_shares[2 * n + k];
      lhs = {d.num, sed, d.den};
      rhs = {range, d.den, range};
    } else {
      lhs = {sed};
      rhs = {d.den};
    }
    if (!cfg.lean && private_range) {
      for (int i = 0; i < 3; ++i) {
        lhs.push_back(session.zero_share());
        rhs.push_back(session.zero_share());
      }
    }

    std::vector<AuthShare> prods;
    if (cfg.paper_faithful) {
      prods.reserve(lhs.size());
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        prods.push_back(session.mul(lhs[i], rhs[i]));
      }
    } else {
      prods = session.mul_batch(lhs, rhs);
    }

    if (private_range) {
      num_r = prods[0];
      sed_den = prods[1];
      den_r = prods[2];
    } else {
      FieldElement range = fe(f, cfg.face_range_public);
      num_r = session.scale(range, d.num);
      sed_den = prods[0];
      den_r = session.scale(range, d.den);
    }

    const FusionParams& fp = cfg.fusion;
    AuthShare fused_lhs =
        session.add(session.scale(fe(f, fp.lhs_scale * fp.alpha_q), num_r),
                    session.scale(fe(f, fp.lhs_scale * fp.beta_q), sed_den));
    AuthShare fused_rhs = session.scale(fe(f, fp.rhs_scale), den_r);

    ComparisonResult cmp = session.compare_less(fused_lhs, fused_rhs);
    marks.before_output = session.stats().channel.rounds_sent;

    FieldElement bit = session.open_output(cmp.bit);
    out.decision = static_cast<int>(bit.value);
    out.outcome = bit.value == 1 ? Outcome::Accept : Outcome::Reject;
  } catch (const AbortError&) {
    out.outcome = Outcome::Abort;
    out.decision = -1;
    marks.close_open_phases(session.stats().channel.rounds_sent);
  }
  finish_output(out, session, marks, t0);
  return out;
}

}  // namespace biompc
