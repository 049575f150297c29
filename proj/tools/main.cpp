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

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>

#include "biompc/bench.hpp"
#include "biompc/selfcheck.hpp"
#include "biompc/synth.hpp"
#include "biompc/template_io.hpp"

namespace biompc {
namespace {

// Exit codes: 0 accept, 1 reject, 2 abort/cheat, 3 operational error.
// CLI11 parse failures use its own codes (>= 100).
constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitAbort = 2;
constexpr int kExitError = 3;

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Protocol parse_protocol(const std::string& name) {
  if (name == "iris") return Protocol::Iris;
  if (name == "face") return Protocol::Face;
  if (name == "multimodal") return Protocol::Multimodal;
  throw CLI::ValidationError("--protocol",
                             "must be iris, face, or multimodal");
}

struct CommonArgs {
  std::string protocol = "iris";
  std::uint64_t p = kDefaultPrime;
  std::size_t n = 1600;
  std::size_t radial = 0;
  std::size_t angular = 0;
  std::size_t k = 1;
  unsigned bf = 8;
  std::uint64_t seed = 0;
  bool seeded = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--protocol", args.protocol,
                  "iris | face | multimodal")
      ->default_val(args.protocol);
  cmd->add_option("--p", args.p, "prime modulus")->default_val(args.p);
  cmd->add_option("--n", args.n, "iris template length N");
  cmd->add_option("--radial", args.radial, "iris radial resolution r");
  cmd->add_option("--angular", args.angular, "iris angular resolution theta");
  cmd->add_option("--k", args.k, "face feature count");
  cmd->add_option("--bf", args.bf, "face feature bit width");
  cmd->add_option("--seed", args.seed, "deterministic seed")
      ->each([&](const std::string&) { args.seeded = true; });
}

void resolve_dimensions(CommonArgs& args) {
  if (args.radial != 0 && args.angular != 0) {
    args.n = 2 * args.radial * args.angular;
  }
  if (!args.seeded) {
    args.seed = entropy_seed();
  }
}

std::filesystem::path bundle_path(const std::string& prefix, PartyId party) {
  return prefix + ".party" + std::to_string(static_cast<int>(party)) +
         ".bundle";
}

int cmd_deal(const CommonArgs& common, const std::string& out,
             double margin) {
  CommonArgs args = common;
  resolve_dimensions(args);
  FieldParams params(args.p);
  DealCounts counts = estimate(parse_protocol(args.protocol), args.n, args.k,
                               params.ell());
  if (margin > 0) {
    auto pad = [&](std::uint32_t v) {
      return static_cast<std::uint32_t>(
          std::ceil(static_cast<double>(v) * (1.0 + margin)));
    };
    counts.triples = pad(counts.triples);
    counts.squares = pad(counts.squares);
    counts.randbits = pad(counts.randbits);
    counts.masks_per_party = pad(counts.masks_per_party);
  }
  SecureRng rng(args.seed);
  auto [b1, b2] = deal(params, counts, rng);
  write_bundle(b1, bundle_path(out, PartyId::P1));
  write_bundle(b2, bundle_path(out, PartyId::P2));
  std::cout << "wrote " << bundle_path(out, PartyId::P1).string() << " and "
            << bundle_path(out, PartyId::P2).string() << "\n"
            << "p: " << args.p << " ell: " << params.ell()
            << " triples: " << counts.triples
            << " squares: " << counts.squares
            << " randbits: " << counts.randbits
            << " masks/party: " << counts.masks_per_party << "\n";
  return kExitAccept;
}

int cmd_gen_data(const CommonArgs& common, const std::string& out,
                 double flip_rate, double mask_rate, std::uint64_t face_radius,
                 bool impostor) {
  CommonArgs args = common;
  resolve_dimensions(args);
  Protocol protocol = parse_protocol(args.protocol);
  SecureRng rng(args.seed);

  if (protocol != Protocol::Face) {
    IrisTemplate server = random_iris(rng, args.n, mask_rate,
                                      static_cast<std::uint32_t>(args.radial),
                                      static_cast<std::uint32_t>(args.angular));
    IrisTemplate client =
        impostor ? random_iris(rng, args.n, mask_rate,
                               static_cast<std::uint32_t>(args.radial),
                               static_cast<std::uint32_t>(args.angular))
                 : genuine_iris(server, rng, flip_rate, mask_rate);
    write_iris_template(server, out + ".server.iris");
    write_iris_template(client, out + ".client.iris");
    IrisScore score = oracle_iris_hd(client, server);
    std::cout << "iris pair (" << (impostor ? "impostor" : "genuine")
              << "): HD = " << score.num << "/" << score.den << " = "
              << static_cast<double>(score.num) / score.den << "\n";
  }
  if (protocol != Protocol::Iris) {
    FaceTemplate server = random_face(rng, args.k, args.bf);
    FaceTemplate client = impostor ? random_face(rng, args.k, args.bf)
                                   : genuine_face(server, rng, face_radius);
    write_face_template(server, out + ".server.face");
    write_face_template(client, out + ".client.face");
    std::cout << "face pair (" << (impostor ? "impostor" : "genuine")
              << "): SED = " << oracle_face_sed(client, server) << "\n";
  }
  return kExitAccept;
}

struct RunArgs {
  CommonArgs common;
  std::string role = "both-local";
  std::string bundle;
  std::string templates;
  std::string addr = "127.0.0.1:7766";
  std::string alpha = "0.80";
  std::string t = "0.35";
  std::uint64_t tsq = 0;
  std::uint64_t face_range = 0;
  std::uint64_t face_range_max = 0;
  std::string report;
  bool paper_faithful = false;
  bool public_thresholds = false;
  bool lean_fusion = false;
  bool strict_t = false;
};

void describe_run(ReportRecord& rec, const std::string& role,
                  Protocol protocol, const RunArgs& args,
                  const FieldParams& params, std::size_t n, std::size_t k,
                  const ProtocolOutput& out) {
  const unsigned ell = params.ell();
  rec.add("protocol", protocol_name(protocol));
  rec.add("party", role);
  rec.add("p", params.p());
  rec.add("ell", static_cast<std::uint64_t>(ell));
  rec.add("n", static_cast<std::uint64_t>(n));
  rec.add("k", static_cast<std::uint64_t>(k));
  rec.add("bf", static_cast<std::uint64_t>(args.common.bf));
  rec.add("seed", args.common.seed);
  rec.add("paper_faithful", args.paper_faithful ? "true" : "false");
  rec.add("public_thresholds", args.public_thresholds ? "true" : "false");
  rec.add("lean_fusion", args.lean_fusion ? "true" : "false");
  rec.add("decision", outcome_name(out.outcome));

  CostFormulas want = expected_costs(protocol, n, k, ell);
  rec.add("triples_used", out.stats.used.triples);
  rec.add("triples_formula", want.triples);
  rec.add("triples_delta", static_cast<std::int64_t>(out.stats.used.triples) -
                               static_cast<std::int64_t>(want.triples));
  rec.add("squares_used", out.stats.used.squares);
  rec.add("squares_formula", want.squares);
  rec.add("randbits_used", out.stats.used.randbits);
  rec.add("masks_used", out.stats.used.masks_own + out.stats.used.masks_peer);

  rec.add("rounds_input", out.input_rounds);
  rec.add("rounds_body", out.body_rounds);
  rec.add("rounds_output", out.output_rounds);
  rec.add("rounds_total", out.stats.channel.rounds_sent);
  rec.add("transmissions_formula", want.transmissions);
  rec.add("transmissions_delta",
          static_cast<std::int64_t>(out.body_rounds) -
              static_cast<std::int64_t>(want.transmissions));

  rec.add("tuple_open_elements", out.stats.channel.tuple_open_elements);
  rec.add("tuple_open_elements_formula", want.tuple_elements);
  rec.add("tuple_open_bits",
          out.stats.channel.tuple_open_elements * ell);
  rec.add("tuple_open_kib",
          payload_kib(out.stats.channel.tuple_open_elements, ell));
  rec.add("aux_elements", out.stats.channel.aux_elements);
  rec.add("bytes_on_wire", out.stats.channel.bytes_on_wire);

  if (params.p() == kDefaultPrime && protocol != Protocol::Face) {
    for (const ReferenceBandwidth& ref : reference_bandwidth_table()) {
      if (ref.n_bits == n) {
        CostFormulas f45 =
            expected_costs(protocol, n, ref.k, kReferenceBandwidthEll);
        rec.add("reference_kb_ell45",
                payload_kib(f45.tuple_elements, kReferenceBandwidthEll));
        rec.add("reference_table_kb",
                protocol == Protocol::Iris ? ref.iris_kb : ref.multimodal_kb);
        rec.add("reference_note",
                "reference table assumes ell=45; this build derives ell=" +
                    std::to_string(ell) + " from p");
        break;
      }
    }
  }
  rec.add("online_seconds", out.online_seconds);
}

int outcome_exit(Outcome outcome) {
  switch (outcome) {
    case Outcome::Accept:
      return kExitAccept;
    case Outcome::Reject:
      return kExitReject;
    case Outcome::Abort:
      return kExitAbort;
  }
  return kExitError;
}

int cmd_run(RunArgs& args) {
  resolve_dimensions(args.common);
  Protocol protocol = parse_protocol(args.common.protocol);
  const bool both_local = args.role == "both-local";
  const bool is_server = args.role == "server";
  if (!both_local && !is_server && args.role != "client") {
    throw CLI::ValidationError("--role",
                               "must be both-local, server, or client");
  }
  if (args.bundle.empty() || args.templates.empty()) {
    throw CLI::ValidationError("--bundle/--templates",
                               "bundle and template prefixes are required");
  }

  // Templates per side.
  IrisTemplate iris_client, iris_server;
  FaceTemplate face_client, face_server;
  if (protocol != Protocol::Face) {
    if (both_local || !is_server) {
      iris_client = read_iris_template(args.templates + ".client.iris");
    }
    if (both_local || is_server) {
      iris_server = read_iris_template(args.templates + ".server.iris");
    }
  }
  if (protocol != Protocol::Iris) {
    if (both_local || !is_server) {
      face_client = read_face_template(args.templates + ".client.face");
    }
    if (both_local || is_server) {
      face_server = read_face_template(args.templates + ".server.face");
    }
  }

  const IrisTemplate& any_iris =
      both_local || is_server ? iris_server : iris_client;
  const FaceTemplate& any_face =
      both_local || is_server ? face_server : face_client;
  const std::size_t n = protocol == Protocol::Face ? 0 : any_iris.length();
  const std::size_t k = protocol == Protocol::Iris ? 0 : any_face.k();
  if (protocol != Protocol::Iris) {
    args.common.bf = any_face.feature_bits;
    args.common.k = k;
  }
  if (protocol != Protocol::Face) {
    args.common.n = n;
  }

  const std::uint64_t sed_cap =
      protocol == Protocol::Iris
          ? 0
          : k * ((1ULL << args.common.bf) - 1) * ((1ULL << args.common.bf) - 1);

  IrisConfig iris_cfg;
  FaceConfig face_cfg;
  FusionConfig fusion_cfg;
  if (protocol == Protocol::Iris) {
    auto [t_num, t_den] = threshold_fraction(parse_decimal(args.t));
    iris_cfg = IrisConfig{n, t_num, t_den, args.public_thresholds};
  } else if (protocol == Protocol::Face) {
    face_cfg = FaceConfig{k, args.common.bf,
                          args.tsq != 0 ? args.tsq : sed_cap / 4};
  } else {
    fusion_cfg.n_bits = n;
    fusion_cfg.k = k;
    fusion_cfg.feature_bits = args.common.bf;
    fusion_cfg.fusion = quantize_fusion(parse_decimal(args.alpha),
                                        parse_decimal(args.t), args.strict_t);
    fusion_cfg.face_range_max =
        args.face_range_max != 0 ? args.face_range_max : sed_cap;
    fusion_cfg.paper_faithful = args.paper_faithful;
    fusion_cfg.lean = args.lean_fusion;
    fusion_cfg.range_public = args.public_thresholds;
    fusion_cfg.face_range_public =
        args.public_thresholds
            ? (args.face_range != 0 ? args.face_range : fusion_cfg.face_range_max)
            : 0;
  }
  const std::uint64_t face_range_private =
      args.face_range != 0 ? args.face_range
                           : (protocol == Protocol::Multimodal ? sed_cap : 0);

  auto drive_party = [&](PartySession& session) -> ProtocolOutput {
    switch (protocol) {
      case Protocol::Iris:
        return run_iris(session, iris_cfg,
                        session.party() == PartyId::P1 ? iris_server
                                                       : iris_client);
      case Protocol::Face:
        return run_face(session, face_cfg,
                        session.party() == PartyId::P1 ? face_server
                                                       : face_client);
      case Protocol::Multimodal: {
        FusionInput input{
            session.party() == PartyId::P1 ? iris_server : iris_client,
            session.party() == PartyId::P1 ? face_server : face_client,
            session.party() == PartyId::P1 && !fusion_cfg.range_public
                ? face_range_private
                : 0};
        return run_fusion(session, fusion_cfg, input);
      }
    }
    throw Error("unreachable");
  };

  std::vector<ReportRecord> records;
  Outcome final_outcome = Outcome::Abort;

  if (both_local) {
    PreprocessingBundle b1 = read_bundle(bundle_path(args.bundle, PartyId::P1));
    PreprocessingBundle b2 = read_bundle(bundle_path(args.bundle, PartyId::P2));
    FieldParams params = b1.params;
    auto [e1, e2] = pair_in_memory();
    SecureRng nonce_seed(args.common.seed);
    PartySession s1(std::move(b1), *e1, nonce_seed.fork(1));
    PartySession s2(std::move(b2), *e2, nonce_seed.fork(2));
    ProtocolOutput out1, out2;
    run_parties(
        *e1, *e2, [&] { out1 = drive_party(s1); },
        [&] { out2 = drive_party(s2); });

    ReportRecord r1, r2;
    describe_run(r1, "server", protocol, args, params, n, k, out1);
    describe_run(r2, "client", protocol, args, params, n, k, out2);
    records.push_back(r1);
    records.push_back(r2);
    final_outcome = out1.outcome == Outcome::Abort || out2.outcome == Outcome::Abort
                        ? Outcome::Abort
                        : out1.outcome;
  } else {
    PartyId me = is_server ? PartyId::P1 : PartyId::P2;
    PreprocessingBundle bundle = read_bundle(bundle_path(args.bundle, me));
    FieldParams params = bundle.params;
    std::unique_ptr<Endpoint> link =
        is_server ? listen_tcp(args.addr) : connect_tcp(args.addr);
    SecureRng nonce_seed(args.common.seed);
    PartySession session(std::move(bundle), *link,
                         nonce_seed.fork(static_cast<std::uint64_t>(me)));
    ProtocolOutput out = drive_party(session);
    ReportRecord rec;
    describe_run(rec, args.role, protocol, args, params, n, k, out);
    records.push_back(rec);
    final_outcome = out.outcome;
  }

  if (!args.report.empty()) {
    std::ofstream rf(args.report);
    if (!rf) {
      throw Error("cannot open report file '" + args.report + "'");
    }
    write_report(rf, records);
  } else {
    write_report(std::cout, records);
  }
  std::cout << "decision: " << outcome_name(final_outcome) << "\n";
  return outcome_exit(final_outcome);
}

int cmd_verify(bool quick, std::uint64_t seed) {
  VerifyOptions opt;
  opt.quick = quick;
  opt.seed = seed == 0 ? 1 : seed;
  std::vector<CheckResult> results = run_verification(opt, std::cout);
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const CheckResult& r) { return r.pass; });
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return ok ? kExitAccept : kExitError;
}

int cmd_bench(std::uint64_t seed, const std::string& report_path,
              bool paper_faithful) {
  FieldParams params(kDefaultPrime);
  const unsigned ell = params.ell();
  std::vector<ReportRecord> records;
  std::uint64_t run_seed = seed == 0 ? 1 : seed;

  struct FusionRow {
    std::size_t n;
    std::size_t k;
    const char* alpha;
    const char* t;
  };
  const std::vector<std::size_t> iris_rows = {1600, 3600, 5760, 6400};
  const std::vector<std::size_t> face_rows = {1, 2, 3};
  const std::vector<FusionRow> fusion_rows = {{1600, 1, "0.80", "0.35"},
                                              {1600, 2, "0.55", "0.25"},
                                              {3600, 3, "0.55", "0.25"},
                                              {5760, 2, "0.80", "0.35"},
                                              {6400, 2, "0.80", "0.35"}};

  RunArgs args;
  args.common.seed = run_seed;
  args.paper_faithful = paper_faithful;

  for (std::size_t n : iris_rows) {
    SecureRng rng(run_seed ^ n);
    IrisTemplate server_tpl = random_iris(rng, n, 0.05);
    IrisTemplate client_tpl = genuine_iris(server_tpl, rng, 0.05, 0.05);
    IrisConfig cfg{n, 7, 20, false};
    RunOptions opt;
    opt.seed = ++run_seed;
    opt.counts = estimate(Protocol::Iris, n, 1, ell);
    LocalProtocolRun run =
        run_local_iris(params, cfg, client_tpl, server_tpl, opt);
    args.common.protocol = "iris";
    args.t = "0.35";
    ReportRecord rec;
    describe_run(rec, "server", Protocol::Iris, args, params, n, 0,
                 run.server);
    records.push_back(rec);
  }
  for (std::size_t k : face_rows) {
    SecureRng rng(run_seed ^ (k + 77));
    FaceTemplate server_tpl = random_face(rng, k, 8);
    FaceTemplate client_tpl = genuine_face(server_tpl, rng, 10);
    FaceConfig cfg{k, 8, 1 + 40ULL * 40ULL * k};
    RunOptions opt;
    opt.seed = ++run_seed;
    opt.counts = estimate(Protocol::Face, 1, k, ell);
    LocalProtocolRun run =
        run_local_face(params, cfg, client_tpl, server_tpl, opt);
    args.common.protocol = "face";
    args.common.bf = 8;
    ReportRecord rec;
    describe_run(rec, "server", Protocol::Face, args, params, 0, k,
                 run.server);
    records.push_back(rec);
  }
  for (const FusionRow& row : fusion_rows) {
    SecureRng rng(run_seed ^ (row.n + row.k));
    IrisTemplate server_iris = random_iris(rng, row.n, 0.05);
    IrisTemplate client_iris = genuine_iris(server_iris, rng, 0.05, 0.05);
    FaceTemplate server_face = random_face(rng, row.k, 8);
    FaceTemplate client_face = genuine_face(server_face, rng, 10);
    FusionConfig cfg;
    cfg.n_bits = row.n;
    cfg.k = row.k;
    cfg.feature_bits = 8;
    cfg.fusion = quantize_fusion(parse_decimal(row.alpha),
                                 parse_decimal(row.t), false);
    cfg.face_range_max = row.k * 255ULL * 255ULL;
    cfg.paper_faithful = paper_faithful;
    RunOptions opt;
    opt.seed = ++run_seed;
    opt.counts = estimate(Protocol::Multimodal, row.n, row.k, ell);
    FusionInput client_in{client_iris, client_face, 0};
    FusionInput server_in{server_iris, server_face, cfg.face_range_max};
    LocalProtocolRun run =
        run_local_fusion(params, cfg, client_in, server_in, opt);
    args.common.protocol = "multimodal";
    args.common.bf = 8;
    args.alpha = row.alpha;
    args.t = row.t;
    ReportRecord rec;
    describe_run(rec, "server", Protocol::Multimodal, args, params, row.n,
                 row.k, run.server);
    records.push_back(rec);
  }

  if (!report_path.empty()) {
    std::ofstream rf(report_path);
    if (!rf) {
      throw Error("cannot open report file '" + report_path + "'");
    }
    write_report(rf, records);
    std::cout << "wrote " << records.size() << " records to " << report_path
              << "\n";
  } else {
    write_report(std::cout, records);
  }
  return kExitAccept;
}

int dispatch(int argc, char** argv) {
  CLI::App app{
      "two-party authenticated-share engine with iris, face, and fused "
      "biometric matching"};
  app.require_subcommand(1);

  CommonArgs deal_args;
  std::string deal_out = "bundles";
  double deal_margin = 0.0;
  CLI::App* deal_cmd =
      app.add_subcommand("deal", "generate preprocessing bundles");
  add_common(deal_cmd, deal_args);
  deal_cmd->add_option("--out", deal_out, "bundle file prefix");
  deal_cmd->add_option("--margin", deal_margin,
                       "extra preprocessing fraction on top of the estimate");

  CommonArgs gen_args;
  std::string gen_out = "pair";
  double flip_rate = 0.05;
  double mask_rate = 0.05;
  std::uint64_t face_radius = 10;
  bool impostor = false;
  CLI::App* gen_cmd =
      app.add_subcommand("gen-data", "generate synthetic template pairs");
  add_common(gen_cmd, gen_args);
  gen_cmd->add_option("--out", gen_out, "template file prefix");
  gen_cmd->add_option("--flip-rate", flip_rate,
                      "genuine-pair bit flip probability");
  gen_cmd->add_option("--mask-rate", mask_rate, "mask bit probability");
  gen_cmd->add_option("--face-radius", face_radius,
                      "genuine-pair face feature perturbation");
  gen_cmd->add_flag("--impostor", impostor, "draw an independent pair");

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "run an authentication");
  add_common(run_cmd, run_args.common);
  run_cmd->add_option("--role", run_args.role,
                      "both-local | server | client");
  run_cmd->add_option("--bundle", run_args.bundle, "bundle file prefix");
  run_cmd->add_option("--templates", run_args.templates,
                      "template file prefix");
  run_cmd->add_option("--addr", run_args.addr, "host:port for TCP roles");
  run_cmd->add_option("--alpha", run_args.alpha, "fusion iris weight");
  run_cmd->add_option("--t", run_args.t, "iris / fusion threshold");
  run_cmd->add_option("--tsq", run_args.tsq, "face squared threshold");
  run_cmd->add_option("--face-range", run_args.face_range,
                      "server-side face range R");
  run_cmd->add_option("--face-range-max", run_args.face_range_max,
                      "public bound on R for the range check");
  run_cmd->add_option("--report", run_args.report, "report output path");
  run_cmd->add_flag("--paper-faithful", run_args.paper_faithful,
                    "sequence the fusion products");
  run_cmd->add_flag("--public-thresholds", run_args.public_thresholds,
                    "treat thresholds and face range as public");
  run_cmd->add_flag("--lean-fusion", run_args.lean_fusion,
                    "skip the reserved fusion filler products");
  run_cmd->add_flag("--strict-t", run_args.strict_t,
                    "quantize the fusion threshold to tenths");

  bool quick = false;
  std::uint64_t verify_seed = 1;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the self-verification battery");
  verify_cmd->add_flag("--quick", quick, "reduced sweep sizes");
  verify_cmd->add_option("--seed", verify_seed, "sweep seed");

  std::uint64_t bench_seed = 1;
  std::string bench_report;
  bool bench_faithful = false;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "run the reference configuration grid");
  bench_cmd->add_option("--seed", bench_seed, "bench seed");
  bench_cmd->add_option("--report", bench_report, "report output path");
  bench_cmd->add_flag("--paper-faithful", bench_faithful,
                      "sequence the fusion products");

  CLI11_PARSE(app, argc, argv);

  if (deal_cmd->parsed()) return cmd_deal(deal_args, deal_out, deal_margin);
  if (gen_cmd->parsed()) {
    return cmd_gen_data(gen_args, gen_out, flip_rate, mask_rate, face_radius,
                        impostor);
  }
  if (run_cmd->parsed()) return cmd_run(run_args);
  if (verify_cmd->parsed()) return cmd_verify(quick, verify_seed);
  if (bench_cmd->parsed()) return cmd_bench(bench_seed, bench_report,
                                            bench_faithful);
  return kExitError;
}

}  // namespace
}  // namespace biompc

int main(int argc, char** argv) {
  try {
    return biompc::dispatch(argc, argv);
  } catch (const biompc::AbortError& e) {
    std::cerr << "abort: " << e.what() << "\n";
    return biompc::kExitAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return biompc::kExitError;
  }
}
