// Copyright 2026 The Solo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// The acceptance suite. Each test covers one acceptance criterion at its
// stated tolerance and prints one PASS/FAIL line with the measured values
// and runtime.
#include <chrono>
#include <cstdio>

#include "corpus_util.hpp"
#include "gtest/gtest.h"
#include "solo/cli.hpp"
#include "solo/verify.hpp"

#include "ast_gen.hpp"

namespace solo {
namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int n, const char* name, bool pass, double secs, const std::string& detail) {
  std::printf("ACCEPTANCE %d [%s]: %s in %.2fs -- %s\n", n, name, pass ? "PASS" : "FAIL",
              secs, detail.c_str());
  std::fflush(stdout);
  EXPECT_TRUE(pass) << "criterion " << n << ": " << detail;
}

TypedProgram corpus(const std::string& name) {
  return typecheck_program(parse_program(testutil::corpus_text(name)));
}

TEST(Acceptance, C1GoldenTypingSuite) {
  Timer t;
  struct Golden {
    const char* file;
    bool is_error;
    const char* expect;
  };
  // The reference outcomes, with loop parameters substituted: kmeans eps = 3,
  // cdf m*eps = 5*1, gd k*eps = 10*1, mwem 2k*eps = 2*4*1.
  Golden golden[] = {
      {"dbl.solo", false, "sreal diff [db:2]"},
      {"simple_privacy.solo", false, "EpsPM [o:2] real"},
      {"add_noise_twice.solo", false, "EpsPM [o:5] real"},
      {"summation.solo", false, "sreal diff [input_db:1]"},
      {"sum_no_clip.solo", true, "METRIC_MISMATCH"},
      {"dangerous_map.solo", true, "ENV_ESCAPE"},
      {"sensitive_branch.solo", true, "SENSITIVE_BRANCH"},
      {"kmeans_iter.solo", false, "EpsPM [b:3] list(prod(real, real))"},
      {"cdf.solo", false, "EpsPM [db:5] list(real)"},
      {"gd.solo", false, "EpsPM [xs:10, ys:10] list(list(real))"},
      {"mwem.solo", false, "EpsPM [db:8] list(prod(real, real))"},
      {"pairs.solo", false, "sreal diff [a:3, b:2]"},
  };
  bool pass = true;
  std::string detail;
  for (const Golden& g : golden) {
    std::string got;
    try {
      TypedProgram tp = corpus(g.file);
      got = g.is_error ? std::string("no error") : pretty_type(tp.main_type);
    } catch (const TypeError& e) {
      got = g.is_error ? code_name(e.code()) : std::string("error: ") + e.what();
    }
    if (got != g.expect) {
      pass = false;
      detail += std::string(g.file) + " gave '" + got + "' want '" + g.expect + "'; ";
    }
  }
  if (pass) detail = "12 golden programs matched exactly";
  pass = pass && t.seconds() < 5.0;
  report(1, "golden typing suite", pass, t.seconds(), detail);
}

TEST(Acceptance, C2AdvancedCompositionNumeric) {
  Timer t;
  // Independent evaluation of the advanced-composition formula, done before
  // the build: 2*0.1*sqrt(2*100*ln(1e5)) = 9.597051824376162 and
  // 100*1e-6 + 1e-5 = 1.1e-4.
  PEnv<EDCost> p;
  p.set("o", EDCost(RealExpr::lit(Rat(1, 10)), RealExpr::lit(Rat(1, 1000000))));
  PEnv<EDCost> out = adv_comp(100, RealExpr::lit(Rat(1, 100000)), p);
  double eps = out.get("o").eps().eval();
  double delta = out.get("o").delta().eval();
  bool pass = std::abs(eps - 9.5972) <= 1e-3 && std::abs(delta - 1.1e-4) <= 1e-9 &&
              t.seconds() < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "eps' = %.10g (want 9.5972 +/- 1e-3), delta = %.10g", eps,
                delta);
  report(2, "advanced composition", pass, t.seconds(), buf);
}

TEST(Acceptance, C3GaussianCalibration) {
  Timer t;
  // Independent evaluation of sqrt(2 ln(1.25/1e-5)) = 4.844805262605389.
  double sigma = gauss_sigma(1, 1, 1e-5);
  bool pass = std::abs(sigma - 4.8448) <= 1e-3 && t.seconds() < 1.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "sigma = %.10g (want 4.8448 +/- 1e-3)", sigma);
  report(3, "gaussian calibration", pass, t.seconds(), buf);
}

TEST(Acceptance, C4DpBruteForce) {
  Timer t;
  Grid g{-20, 21, 0.01};
  // Calibrated: Laplace at eps = 1 on neighbors 0 and 1.
  TypedProgram lap = corpus("laplace1.solo");
  Dist d1 = eval_exact_output(lap, {{"db", Value::real(0.0)}}, g);
  Dist d2 = eval_exact_output(lap, {{"db", Value::real(1.0)}}, g);
  auto dir = [](const Dist& a, const Dist& b, double eps) {
    std::map<double, double> pa, pb;
    for (std::size_t i = 0; i < a.support.size(); ++i) pa[a.support[i]] += a.mass[i];
    for (std::size_t i = 0; i < b.support.size(); ++i) pb[b.support[i]] += b.mass[i];
    double excess = 0;
    for (const auto& [v, m] : pa) {
      auto it = pb.find(v);
      excess += std::max(0.0, m - std::exp(eps) * (it == pb.end() ? 0.0 : it->second));
    }
    return excess;
  };
  double fwd = dir(d1, d2, 1.0);
  double bwd = dir(d2, d1, 1.0);

  // Negative: the honest eps-2 program against a claimed eps of 1.
  TypedProgram bad = corpus("miscalibrated.solo");
  Dist b1 = eval_exact_output(bad, {{"db", Value::real(0.0)}}, g);
  Dist b2 = eval_exact_output(bad, {{"db", Value::real(1.0)}}, g);
  double neg_required = required_delta(b1, b2, 1.0);
  double tightest = bisect_tightest_eps(b1, b2, 1e-3);

  bool pass = fwd <= 1e-3 && bwd <= 1e-3 && neg_required > 1e-3 &&
              std::abs(tightest - 2.0) <= 0.05 && t.seconds() < 30.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "required delta = %.3g/%.3g (<= 1e-3 both ways); negative requires %.3g "
                "and bisects to eps = %.4g (want 2.0 +/- 0.05)",
                fwd, bwd, neg_required, tightest);
  report(4, "dp brute force", pass, t.seconds(), buf);
}

TEST(Acceptance, C5MetricPreservationSuite) {
  Timer t;
  std::uint64_t violations = 0, trials = 0;
  double worst = -1;
  Rng seeder(20260810);
  for (int i = 0; i < 1000; ++i) {
    TypedProgram tp = typecheck_program(gen_random_program(77000 + i, 24));
    DistanceSpec spec;
    Rng srng = seeder.split(i);
    for (const SourceDecl& s : tp.program.sources)
      spec.distance[s.name] = srng.uniform01() * 2.0;
    Rng rng(i);
    VerifyReport r = check_metric_preservation(tp, spec, 100, rng);
    violations += r.violations.size();
    trials += r.trials;
    worst = std::max(worst, r.max_observed);
  }
  bool pass = violations == 0 && t.seconds() < 120.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%llu violations over %llu trials (1000 programs x 100 pairs), worst "
                "excess %.3g",
                static_cast<unsigned long long>(violations),
                static_cast<unsigned long long>(trials), worst);
  report(5, "metric preservation", pass, t.seconds(), buf);
}

TEST(Acceptance, C6AlgebraLawSuite) {
  Timer t;
  std::uint64_t failures = 0;
  Rng rng(99);
  static const char* names[] = {"a", "b", "c", "d"};
  auto renv = [&]() {
    SEnv e;
    std::size_t n = rng.next_u64() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t raw = rng.next_u64() % 9;
      e.set(names[rng.next_u64() % 4], raw == 8 ? Sens::infinity() : Sens(raw));
    }
    return e;
  };
  for (int i = 0; i < 100000; ++i) {
    SEnv a = renv(), b = renv(), c = renv();
    if (!(senv_plus(a, b) == senv_plus(b, a))) ++failures;
    if (!(senv_plus(senv_plus(a, b), c) == senv_plus(a, senv_plus(b, c)))) ++failures;
    if (!(senv_plus(a, SEnv()) == a)) ++failures;
    if (!(senv_join(a, a) == a)) ++failures;
    if (!(senv_join(senv_join(a, b), c) == senv_join(a, senv_join(b, c)))) ++failures;
    Sens k(rng.next_u64() % 5);
    if (!(senv_scale(k, senv_plus(a, b)) ==
          senv_plus(senv_scale(k, a), senv_scale(k, b))))
      ++failures;
    PEnv<EpsCost> ta = senv_truncate(EpsCost(Rat(1, 3)), a);
    if (ta.size() != a.size()) ++failures;
  }
  // Privacy-environment monoids and scale_priv = iterated composition.
  for (int i = 0; i < 20000; ++i) {
    PEnv<EpsCost> p, q;
    std::size_t n = rng.next_u64() % 3;
    for (std::size_t j = 0; j < n; ++j)
      p.set(names[rng.next_u64() % 4], EpsCost(Rat(rng.next_u64() % 6, 1 + rng.next_u64() % 4)));
    n = rng.next_u64() % 3;
    for (std::size_t j = 0; j < n; ++j)
      q.set(names[rng.next_u64() % 4], EpsCost(Rat(rng.next_u64() % 6, 1 + rng.next_u64() % 4)));
    if (!(eps_seq_comp(p, q) == eps_seq_comp(q, p))) ++failures;
    if (!(eps_seq_comp(p, PEnv<EpsCost>()) == p)) ++failures;
    std::uint64_t k = 1 + rng.next_u64() % 8;
    PEnv<EpsCost> it;
    for (std::uint64_t j = 0; j < k; ++j) it = eps_seq_comp(it, p);
    if (!(scale_priv(k, p) == it)) ++failures;
  }
  // The real-number lemma properties at 1e5 instances.
  Rng lr(31415);
  VerifyReport lemmas = check_lemmas(100000, lr);
  failures += lemmas.violations.size();

  bool pass = failures == 0 && t.seconds() < 60.0;
  char buf[120];
  std::snprintf(buf, sizeof buf, "%llu failures across monoid, scale, truncate and lemma "
                                 "properties",
                static_cast<unsigned long long>(failures));
  report(6, "algebra law suite", pass, t.seconds(), buf);
}

TEST(Acceptance, C7Determinism) {
  Timer t;
  bool pass = true;
  int ran = 0;
  std::string detail;
  // Byte-identical seeded runs across the whole corpus.
  for (const auto& f : testutil::corpus_files()) {
    auto expect = testutil::expectation_of(testutil::read_file(f));
    if (!expect || expect->is_error) continue;
    std::string in =
        (std::filesystem::path(testutil::corpus_dir()) / "inputs" / (f.stem().string() + ".json"))
            .string();
    if (!std::filesystem::exists(in)) continue;
    std::vector<std::string> args = {"run", f.string(), "--inputs", in, "--seed", "7",
                                     "--trace"};
    std::stringstream o1, e1, o2, e2;
    int c1 = cli::run(args, o1, e1);
    int c2 = cli::run(args, o2, e2);
    ++ran;
    if (c1 != 0 || c2 != 0 || o1.str() != o2.str() || o1.str().empty()) {
      pass = false;
      detail = f.filename().string() + " is not byte-identical across seeded runs";
      break;
    }
  }
  if (pass && ran < 15) {
    pass = false;
    detail = "only " + std::to_string(ran) + " corpus programs were exercised";
  }
  if (pass)
    detail = std::to_string(ran) + " seeded corpus runs byte-identical; round-trips hold";
  // Round-trip on the corpus and on 1e4 generated ASTs.
  if (pass) {
    for (const auto& f : testutil::corpus_files()) {
      Program p = parse_program(testutil::read_file(f));
      if (!program_equal(p, parse_program(pretty_program(p)))) {
        pass = false;
        detail = f.filename().string() + " does not round-trip";
        break;
      }
    }
  }
  if (pass) {
    for (int i = 0; i < 10000 && pass; ++i) {
      testgen::AstGen gen(50000 + i);
      Program p = gen.program();
      try {
        if (!program_equal(p, parse_program(pretty_program(p)))) {
          pass = false;
          detail = "generated AST " + std::to_string(i) + " does not round-trip";
        }
      } catch (const ParseError& e) {
        pass = false;
        detail = "generated AST " + std::to_string(i) + " fails to re-parse: " + e.what();
      }
    }
  }
  pass = pass && t.seconds() < 60.0;
  report(7, "determinism and round-trip", pass, t.seconds(), detail);
}

}  // namespace
}  // namespace solo
