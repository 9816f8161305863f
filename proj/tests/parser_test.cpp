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
#include "solo/parser.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ast_gen.hpp"
#include "gtest/gtest.h"
#include "solo/pretty.hpp"

namespace solo {
namespace {

Program parse(const std::string& text) { return parse_program(text); }

TEST(ParserTest, BinopBody) {
  Program p = parse("main = x <+> x;");
  ASSERT_EQ(p.main->k, Expr::K::kBinOp);
  EXPECT_EQ(p.main->op, BinK::kPlus);
  EXPECT_EQ(p.main->kids[0]->k, Expr::K::kVar);
  EXPECT_EQ(p.main->kids[0]->name, "x");
}

TEST(ParserTest, LaplaceBrackets) {
  Program p = parse("main = laplace[sing(2), sing(1)](e);");
  ASSERT_EQ(p.main->k, Expr::K::kLaplace);
  EXPECT_EQ(p.main->kids[0]->k, Expr::K::kSing);
  EXPECT_EQ(p.main->kids[0]->rat, Rat(2));
  EXPECT_EQ(p.main->kids[1]->rat, Rat(1));
  EXPECT_EQ(p.main->kids[2]->k, Expr::K::kVar);
}

TEST(ParserTest, IfRequiresBothBranches) {
  try {
    parse("main = if(x){y};");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_GT(e.pos().line, 0);
    EXPECT_NE(std::string(e.what()).find("both branches"), std::string::npos);
  }
}

TEST(ParserTest, SourceAndDefAndTypes) {
  Program p = parse(
      "source db : slist L1 (sreal disc);\n"
      "def dbl(x) : forall s. sreal diff s -> sreal diff (s + s) = x <+> x;\n"
      "main = dbl(db);\n");
  ASSERT_EQ(p.sources.size(), 1u);
  EXPECT_EQ(p.sources[0].name, "db");
  EXPECT_EQ(p.sources[0].stype->k, SType::K::kSList);
  ASSERT_EQ(p.defs.size(), 1u);
  EXPECT_EQ(p.defs[0].env_vars, std::vector<std::string>{"s"});
  ASSERT_EQ(p.defs[0].signature->k, Type::K::kFun);
  EXPECT_EQ(p.defs[0].signature->a->env->k, EnvTerm::K::kVar);
  EXPECT_EQ(p.defs[0].signature->b->env->k, EnvTerm::K::kPlus);
  ASSERT_EQ(p.main->k, Expr::K::kApp);
}

TEST(ParserTest, EnvLiteralsAndPMTypes) {
  Program p = parse("def f(x) : EpsPM [o:2] real -> real = 0; main = 1;");
  TypePtr d = p.defs[0].signature->a;
  ASSERT_EQ(d->k, Type::K::kPM);
  EXPECT_EQ(d->variant, Variant::kEps);
  ASSERT_EQ(d->penv->k, PrivTerm::K::kLit);
  EXPECT_EQ(d->penv->lit.eps.get("o"), EpsCost(Rat(2)));
}

TEST(ParserTest, BindAndLetAndFun) {
  Program p = parse("main = y <- laplace[sing(1), sing(1)](x); return(y);");
  ASSERT_EQ(p.main->k, Expr::K::kBind);
  EXPECT_EQ(p.main->name, "y");
  Program q = parse("main = let a = 1 in fun(z : real) => a;");
  ASSERT_EQ(q.main->k, Expr::K::kLet);
  EXPECT_EQ(q.main->kids[1]->k, Expr::K::kLam);
}

TEST(ParserTest, RecursiveFunNeedsResultAnnotation) {
  EXPECT_THROW(parse("main = fun[go](x : real) => go(x);"), ParseError);
  Program p = parse("main = fun[go](x : real) : real => go(x);");
  EXPECT_EQ(p.main->name, "go");
  ASSERT_TRUE(p.main->type2 != nullptr);
}

TEST(ParserTest, CaseForms) {
  Program p = parse(
      "main = case(xs) { nil => 0 } { cons(h, t) => h };");
  EXPECT_EQ(p.main->k, Expr::K::kCase);
  Program q = parse(
      "main = case(xs) { snil => 0 } { scons(h, t) => h };");
  EXPECT_EQ(q.main->k, Expr::K::kSCase);
  EXPECT_THROW(parse("main = case(xs) { nil => 0 } { cons(h, h) => h };"), ParseError);
}

TEST(ParserTest, UnknownPrimitiveWithBrackets) {
  try {
    parse("main = mapp[sing(1)](x);");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown primitive"), std::string::npos);
  }
}

TEST(ParserTest, ReservedNamesRejectedAsBinders) {
  EXPECT_THROW(parse("main = let map = 1 in map;"), ParseError);
  EXPECT_THROW(parse("source sum : sreal diff; main = 1;"), ParseError);
}

TEST(ParserTest, PositionsAreTracked) {
  Program p = parse("main =\n  x <+> y;");
  EXPECT_EQ(p.main->pos.line, 2);
  EXPECT_GT(p.main->pos.col, 0);
  try {
    parse("main = (x <+> ;");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().line, 1);
    EXPECT_GT(e.pos().col, 10);
  }
}

TEST(ParserTest, DecimalRationalsParseExactly) {
  Program p = parse("main = sing(0.25);");
  EXPECT_EQ(p.main->rat, Rat(1, 4));
  Program q = parse("main = sing(1e-5);");
  EXPECT_EQ(q.main->rat, Rat(1, 100000));
  Program r = parse("main = 5/2;");
  EXPECT_EQ(r.main->rat, Rat(5, 2));
}

TEST(ParserTest, CrLfAccepted) {
  Program p = parse("main =\r\n  1;\r\n");
  EXPECT_EQ(p.main->k, Expr::K::kRealLit);
  EXPECT_EQ(p.main->pos.line, 2);
}

TEST(RoundTripTest, HandWrittenPrograms) {
  const char* programs[] = {
      "source db : sreal diff;\n\nmain = laplace[sing(2), sing(2)](db <+> db);\n",
      "source a : sreal diff;\nsource b : slist LInf (sreal disc);\n\n"
      "def f(x) : forall s. sreal diff s -> sreal diff (2 * s) = sing(2) ltimes x;\n\n"
      "main = pair(f(a), map(fun(y : sreal disc _) => y, b));\n",
      "main = x <- return(1); y <- return(2); return(x <+> y);\n",
      "main = case(zs) { snil => 0 } { scons(h, t) => reveal(h) };\n",
      "def g : EpsPM (trunc[2](s) + trunc[3](s)) real = 0;\nmain = g;\n",
      "main = if(lt(1, 2)) { nth(xs, 0) } { divd(4, 2) };\n",
  };
  for (const char* src : programs) {
    Program p = parse(src);
    std::string printed = pretty_program(p);
    Program q = parse(printed);
    EXPECT_TRUE(program_equal(p, q)) << "round-trip changed:\n" << src << "\nvs\n" << printed;
    // Pretty output is a fixed point.
    EXPECT_EQ(printed, pretty_program(q));
  }
}

TEST(RoundTripTest, GeneratedAsts) {
  // parse . pretty = id on structurally random programs over the whole
  // grammar; 10^4 instances.
  int count = 10000;
  for (int i = 0; i < count; ++i) {
    testgen::AstGen gen(1000 + i);
    Program p = gen.program();
    std::string printed = pretty_program(p);
    Program q;
    try {
      q = parse(printed);
    } catch (const ParseError& e) {
      FAIL() << "generated program failed to re-parse: " << e.what() << "\n" << printed;
    }
    ASSERT_TRUE(program_equal(p, q)) << "round-trip changed:\n" << printed << "\nvs\n"
                                     << pretty_program(q);
  }
}

TEST(ParserRobustnessTest, GarbageNeverCrashes) {
  // Random token soup must produce a ParseError (or parse), never crash.
  const char* pieces[] = {"main",  "=",    ";",   "(",    ")",    "[",     "]",
                          "{",     "}",    ",",   ":",    "<+>",  "<-",    "->",
                          "=>",    "fun",  "if",  "case", "nil",  "cons",  "1",
                          "0.5",   "x",    "let", "in",   "sreal", "diff", "map",
                          "laplace", "sing", "+",  "*",    "/",    "_",     "."};
  Rng rng(8);
  int parsed = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string text;
    std::size_t n = 1 + rng.next_u64() % 24;
    for (std::size_t j = 0; j < n; ++j) {
      text += pieces[rng.next_u64() % (sizeof pieces / sizeof *pieces)];
      text += " ";
    }
    try {
      parse(text);
      ++parsed;
    } catch (const ParseError&) {
      // expected for almost every draw
    }
  }
  EXPECT_LT(parsed, 10000);
}

TEST(RoundTripTest, CorpusFiles) {
  const char* dir = std::getenv("SOLO_CORPUS_DIR");
  if (!dir) GTEST_SKIP() << "SOLO_CORPUS_DIR not set";
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".solo") continue;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    Program p;
    try {
      p = parse(ss.str());
    } catch (const ParseError& e) {
      FAIL() << entry.path() << ": " << e.render(entry.path().filename().string());
    }
    Program q = parse(pretty_program(p));
    EXPECT_TRUE(program_equal(p, q)) << entry.path() << " does not round-trip";
    ++seen;
  }
  EXPECT_GE(seen, 12) << "corpus should bundle at least 12 programs";
}

}  // namespace
}  // namespace solo
