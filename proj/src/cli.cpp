#include "dynlis/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dynlis/replay.hpp"
#include "dynlis/workload.hpp"

namespace dynlis {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoFailure {
  std::string what;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure{"cannot open " + path + " for reading"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoFailure{"read error on " + path};
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure{"cannot open " + path + " for writing"};
  out << text;
  if (!out) throw IoFailure{"write error on " + path};
}

struct GeneratorSpec {
  std::uint64_t seed = 1;
  std::size_t n = 0;
  std::string mix_text;
  std::string adversarial;
  Value value_max = 1 << 20;
};

std::vector<WorkloadOp> make_ops(const GeneratorSpec& spec) {
  if (!spec.adversarial.empty()) return gen_adversarial(spec.adversarial, spec.n);
  Mix mix = spec.mix_text.empty() ? Mix{} : parse_mix(spec.mix_text);
  return gen_workload(spec.seed, spec.n, mix, 0, spec.value_max);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"dynamic longest-increasing-subsequence toolkit"};
  app.require_subcommand(1);

  GeneratorSpec gen_spec;
  std::string gen_out = "-";
  CLI::App* gen = app.add_subcommand("gen", "generate a workload trace");
  gen->add_option("--seed", gen_spec.seed, "generator seed");
  gen->add_option("--n", gen_spec.n, "number of operations")->required();
  auto* gen_mix = gen->add_option("--mix", gen_spec.mix_text,
                                  "fractions, e.g. append=0.4,insert=0.3,delete=0.2,query=0.1");
  gen->add_option("--adversarial", gen_spec.adversarial,
                  "increasing | decreasing | sawtooth")
      ->excludes(gen_mix);
  gen->add_option("--vmax", gen_spec.value_max, "values drawn uniformly from [0,vmax)");
  gen->add_option("--out", gen_out, "output path, '-' for stdout");

  std::string verify_trace;
  std::string verify_mode = "full";
  CLI::App* verify = app.add_subcommand("verify", "replay a trace against the oracles");
  verify->add_option("--trace", verify_trace, "trace file")->required();
  verify->add_option("--mode", verify_mode, "full | length_only")
      ->check(CLI::IsMember({"full", "length_only"}));

  GeneratorSpec bench_spec;
  std::string bench_trace;
  std::string bench_out = "-";
  CLI::App* bench = app.add_subcommand("bench", "replay and emit per-mutation cost CSV");
  auto* bench_trace_opt = bench->add_option("--trace", bench_trace, "trace file");
  bench->add_option("--seed", bench_spec.seed, "generator seed")->excludes(bench_trace_opt);
  auto* bench_n = bench->add_option("--n", bench_spec.n, "number of generated operations");
  bench_n->excludes(bench_trace_opt);
  auto* bench_mix =
      bench->add_option("--mix", bench_spec.mix_text, "generator mix")->excludes(bench_trace_opt);
  bench->add_option("--adversarial", bench_spec.adversarial, "adversarial generator")
      ->excludes(bench_trace_opt)
      ->excludes(bench_mix);
  bench->add_option("--vmax", bench_spec.value_max, "generator value range")
      ->excludes(bench_trace_opt);
  bench->add_option("--out", bench_out, "CSV path, '-' for stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      std::vector<WorkloadOp> ops = make_ops(gen_spec);
      write_output(gen_out, emit_trace(ops));
      return kExitOk;
    }

    if (verify->parsed()) {
      std::vector<WorkloadOp> ops = parse_trace(read_file(verify_trace));
      VerifyResult result = run_verify(
          ops, verify_mode == "full" ? VerifyMode::full : VerifyMode::length_only);
      std::cout << result.report;
      return result.ok ? kExitOk : kExitMismatch;
    }

    if (bench->parsed()) {
      std::vector<WorkloadOp> ops;
      if (!bench_trace.empty()) {
        ops = parse_trace(read_file(bench_trace));
      } else if (*bench_n) {
        ops = make_ops(bench_spec);
      } else {
        std::cerr << "bench: need --trace or --n\n";
        return kExitUsage;
      }
      BenchResult result = run_bench(ops);
      std::ostringstream csv;
      write_bench_csv(csv, result);
      write_output(bench_out, csv.str());
      return kExitOk;
    }
  } catch (const IoFailure& io) {
    std::cerr << "io error: " << io.what << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "trace parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BadMix& e) {
    std::cerr << "bad generator spec: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    // A failing operation while replaying (bad delete, duplicate key, ...).
    std::cerr << "replay error: " << e.what() << '\n';
    return kExitMismatch;
  }

  return kExitUsage;
}

}  // namespace dynlis
