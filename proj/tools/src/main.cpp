// commlen: certificates for commutator lengths in GL(n, D), D a rational
// quaternion algebra. Every subcommand writes line-delimited JSON.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commlen/errors.hpp"
#include "commlen_cli/commands.hpp"

namespace {

using commlen::Json;
namespace cli = commlen::cli;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw commlen::PreconditionError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw commlen::PreconditionError("cannot write " + path);
    }
  }
  void line(const Json& j) { out() << j.dump() << '\n'; }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact commutator-length certificates over rational quaternions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string algebra_text = "-1,-1";
  std::uint64_t seed = 0;
  std::string out_path;
  app.add_option("--algebra", algebra_text, "Quaternion algebra parameters a,b");
  app.add_option("--seed", seed, "Seed for randomized behaviour");
  app.add_option("--out", out_path, "Write output here instead of stdout");

  std::size_t n = 3;
  std::int64_t c = 1, d = 1;
  bool diagonal = false;
  auto* gen = app.add_subcommand("gen", "Generate a based instance");
  gen->add_option("--n", n, "Matrix size")->check(CLI::Range(2, 64));
  gen->add_option("--c", c, "Commutator length of delta")->check(CLI::Range(0, 1000));
  gen->add_flag("--diagonal", diagonal, "Element diag(1, ..., 1, delta)");

  std::string input = "-";
  auto* decompose = app.add_subcommand("decompose", "Factor a matrix as H U V U");
  decompose->add_option("file", input, "Matrix JSON (- for stdin)");

  auto* lower = app.add_subcommand(
      "certify-lower", "Certificate for tau from matrix commutators");
  lower->add_option("file", input, "Pairs and tau JSON (- for stdin)");

  std::string mode_text = "gl";
  auto* factor = app.add_subcommand("factor", "Factor an instance into commutators");
  factor->add_option("file", input, "Instance JSON (- for stdin)");
  factor->add_option("--mode", mode_text, "gl, e or stable")
      ->check(CLI::IsMember({"gl", "e", "stable"}));

  std::size_t bound_n = 2;
  auto* bounds = app.add_subcommand("bounds", "Print bound formulas");
  bounds->add_option("--n", bound_n, "Matrix size")->check(CLI::Range(2, 1 << 20));
  bounds->add_option("--c", c, "Length in D*")->check(CLI::Range(1, 1 << 30));
  bounds->add_option("--d", d, "Number of matrix commutators")
      ->check(CLI::Range(1, 1 << 30));

  std::string verify_path;
  int cases = 40;
  auto* selftest = app.add_subcommand("selftest", "Run the property suite");
  selftest->add_option("--verify", verify_path,
                       "Re-verify a certificate file instead");
  selftest->add_option("--cases", cases, "Cases per check and size")
      ->check(CLI::Range(1, 100000));

  CLI11_PARSE(app, argc, argv);

  try {
    Sink sink(out_path);
    const commlen::Algebra alg = commlen::parse_algebra(algebra_text);
    if (*gen) {
      sink.line(cli::cmd_gen({n, c, seed, alg, diagonal}));
    } else if (*decompose) {
      for (const auto& j : cli::parse_lines(read_input(input))) {
        sink.line(cli::cmd_decompose(j, alg));
      }
    } else if (*lower) {
      for (const auto& j : cli::parse_lines(read_input(input))) {
        sink.line(cli::cmd_certify_lower(j));
      }
    } else if (*factor) {
      const auto mode = *cli::parse_factor_mode(mode_text);
      for (const auto& j : cli::parse_lines(read_input(input))) {
        sink.line(cli::cmd_factor(j, mode));
      }
    } else if (*bounds) {
      sink.line(cli::cmd_bounds({bound_n, c, d}));
    } else if (*selftest) {
      const cli::Report report =
          verify_path.empty()
              ? cli::cmd_selftest({seed, cases})
              : cli::verify_lines(cli::parse_lines(read_input(verify_path)));
      for (const auto& line : report.lines) sink.line(line);
      return report.ok ? cli::kOk : cli::kVerificationFailed;
    }
    return cli::kOk;
  } catch (const std::exception& e) {
    std::cerr << "commlen: " << e.what() << '\n';
    return cli::exit_code_for(e);
  }
}
