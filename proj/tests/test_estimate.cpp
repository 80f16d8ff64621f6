#include <string>

#include "coocfeat/error.hpp"
#include "coocfeat/estimate.hpp"
#include "coocfeat/synth.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace coocfeat;

namespace {

const std::vector<std::string> kSoftly = {"softly"};

EmpiricalModel three_line(unsigned threads = 1, const std::string& corpus = fixtures::kThreeLineCorpus) {
  return build_model(corpus, ContextSpec{}, kSoftly, fixtures::three_line_lexicon(), threads).model;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

// Lines of random words from a small vocabulary with occurrence labels.
std::string random_corpus(Rng& rng, std::size_t lines, bool labelled) {
  static const char* words[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::string out;
  for (std::size_t l = 0; l < lines; ++l) {
    const auto len = rng.between(0, 12);
    for (std::size_t i = 0; i < len; ++i) {
      if (i) out += rng.below(4) == 0 ? "  " : " ";
      out += words[rng.below(8)];
      if (labelled) out += rng.below(2) ? "/1" : "/0";
    }
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("three-line corpus matches the hand count") {
  const auto model = three_line();
  CHECK(model.total_tokens() == 9);
  CHECK(model.vocab() == std::vector<std::string>{"barks", "cat", "dog", "loudly", "meows", "purrs", "softly"});
  const auto cat = *model.find_word("cat");
  const auto dog = *model.find_word("dog");
  CHECK(model.n(cat) == 2);
  CHECK(model.n_c(cat, 0) == 2);
  CHECK(model.n_y(cat, 0) == 2);
  CHECK(model.n_c(dog, 0) == 0);
  // The center token never counts as its own context.
  CHECK(model.n_c(*model.find_word("softly"), 0) == 0);
  CHECK(model.n_c(*model.find_word("purrs"), 0) == 1);

  const auto profiles = to_profiles(model);
  CHECK(profiles.profile(0)[cat] == 1.0);
  CHECK(profiles.profile(0)[dog] == 0.0);
  CHECK(profiles.weights()->at(cat) == doctest::Approx(2.0 / 9.0).epsilon(1e-15));

  CHECK(serialize_model(model) == read_file(fixtures::fixture_path("three_line.model.json")));
}

TEST_CASE("window semantics") {
  ContextSpec narrow;
  narrow.window = 1;
  const auto m1 = build_model(fixtures::kThreeLineCorpus, narrow, kSoftly, fixtures::three_line_lexicon()).model;
  CHECK(m1.n_c(*m1.find_word("cat"), 0) == 0);
  CHECK(m1.n_c(*m1.find_word("purrs"), 0) == 1);

  // A feature that never appears leaves every profile at zero.
  const std::vector<std::string> absent = {"zebra"};
  const auto m0 = build_model(fixtures::kThreeLineCorpus, ContextSpec{}, absent, fixtures::three_line_lexicon()).model;
  for (auto c : m0.feature_counts()) CHECK(c == 0);

  // A feature seen twice in one window still counts once; each s sees the other.
  Lexicon lex{{"t"}, {{"x", {1}}, {"s", {0}}}};
  const auto twice = build_model("s x s\n", ContextSpec{}, std::vector<std::string>{"s"}, lex).model;
  CHECK(twice.n_c(*twice.find_word("x"), 0) == 1);
  CHECK(twice.n_c(*twice.find_word("s"), 0) == 2);
}

TEST_CASE("boundary and lowercase options") {
  Lexicon lex{{"t"}, {{"a", {1}}, {"b", {0}}}};
  const std::vector<std::string> feat = {"b"};
  const std::string corpus = "a\nb\n";
  ContextSpec spec;
  CHECK(build_model(corpus, spec, feat, lex).model.n_c(0, 0) == 0);
  spec.boundary = false;
  CHECK(build_model(corpus, spec, feat, lex).model.n_c(0, 0) == 1);

  ContextSpec lower;
  lower.lowercase = true;
  const auto m = build_model("A b\nA B\n", lower, feat, lex).model;
  CHECK(m.vocab() == std::vector<std::string>{"a", "b"});
  CHECK(m.n(0) == 2);
  CHECK(m.n_c(0, 0) == 2);
}

TEST_CASE("doubling the corpus doubles counts and keeps profiles") {
  const auto once = three_line();
  const auto twice = three_line(1, fixtures::kThreeLineCorpus + fixtures::kThreeLineCorpus);
  CHECK(twice.total_tokens() == 2 * once.total_tokens());
  for (std::size_t i = 0; i < once.word_count(); ++i) {
    CHECK(twice.n(i) == 2 * once.n(i));
    CHECK(twice.n_c(i, 0) == 2 * once.n_c(i, 0));
  }
  const auto a = to_profiles(once);
  const auto b = to_profiles(twice);
  CHECK(a.feature(0).keys == b.feature(0).keys);
  CHECK(*a.weights() == *b.weights());
}

TEST_CASE("lexicon misses are excluded and reported") {
  Lexicon lex{{"t"}, {{"cat", {1}}, {"softly", {0}}}};
  const auto result = build_model(fixtures::kThreeLineCorpus, ContextSpec{}, kSoftly, lex);
  CHECK(result.report.raw_tokens == 9);
  CHECK(result.report.unknown_label_words == 5);
  CHECK(result.report.unknown_label_tokens == 5);
  CHECK(result.model.vocab() == std::vector<std::string>{"cat", "softly"});
  CHECK(result.model.total_tokens() == 4);
  // Excluded words still act as context.
  CHECK(result.model.n_c(0, 0) == 2);
}

TEST_CASE("min_count drops rare words") {
  ContextSpec spec;
  spec.min_count = 2;
  const auto result = build_model(fixtures::kThreeLineCorpus, spec, kSoftly, fixtures::three_line_lexicon());
  CHECK(result.model.vocab() == std::vector<std::string>{"cat", "softly"});
  CHECK(result.report.dropped_words == 5);
  CHECK(result.report.dropped_tokens == 5);
}

TEST_CASE("occurrence labels") {
  OccurrenceLabels occ{{"sense"}, '/'};
  const auto m = build_model("bank/1 river/0\nbank/0 money/0\n", ContextSpec{}, std::vector<std::string>{"river"}, occ)
                     .model;
  CHECK(m.vocab() == std::vector<std::string>{"bank", "money", "river"});
  CHECK(m.n(0) == 2);
  CHECK(m.n_y(0, 0) == 1);
  CHECK(m.n_c(0, 0) == 1);
  CHECK_FALSE(to_profiles(m).is_y_functional(0));

  CHECK(kind_of([&] { build_model("bank river/0\n", ContextSpec{}, kSoftly, occ); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { build_model("bank/2\n", ContextSpec{}, kSoftly, occ); }) == ErrorKind::ParseError);
}

TEST_CASE("build errors") {
  CHECK(kind_of([] { three_line(1, ""); }) == ErrorKind::EmptyCorpus);
  CHECK(kind_of([] { three_line(1, " \n\t\n"); }) == ErrorKind::EmptyCorpus);
  Lexicon none{{"t"}, {}};
  CHECK(kind_of([&] { build_model(fixtures::kThreeLineCorpus, ContextSpec{}, kSoftly, none); }) ==
        ErrorKind::EmptyCorpus);
  CHECK(kind_of([&] {
          build_model(fixtures::kThreeLineCorpus, ContextSpec{}, std::vector<std::string>{},
                      fixtures::three_line_lexicon());
        }) == ErrorKind::InvalidArgument);
  ContextSpec zero;
  zero.window = 0;
  CHECK(kind_of([&] { build_model(fixtures::kThreeLineCorpus, zero, kSoftly, fixtures::three_line_lexicon()); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("sharded counting equals the sequential count") {
  CHECK(three_line(3) == three_line(1));
  Rng rng(5);
  OccurrenceLabels occ{{"t"}, '/'};
  const std::vector<std::string> feats = {"a", "c", "h"};
  for (int trial = 0; trial < 20; ++trial) {
    const auto corpus = random_corpus(rng, rng.between(1, 60), true);
    if (corpus.find_first_not_of(" \n") == std::string::npos) continue;
    ContextSpec spec;
    spec.window = rng.between(1, 4);
    spec.min_count = rng.between(1, 3);
    const auto seq = build_model(corpus, spec, feats, occ, 1);
    for (unsigned threads : {2u, 4u, 7u}) {
      const auto par = build_model(corpus, spec, feats, occ, threads);
      CHECK(par.model == seq.model);
      CHECK(serialize_model(par.model) == serialize_model(seq.model));
      CHECK(par.report.dropped_words == seq.report.dropped_words);
    }
  }
}

TEST_CASE("merge_counts") {
  const std::string first = "cat purrs softly\n";
  const std::string second = "dog barks loudly\ncat meows softly\n";
  const auto merged = merge_counts(three_line(1, first), three_line(1, second));
  CHECK(merged == three_line());

  const auto other = build_model(first, ContextSpec{}, std::vector<std::string>{"purrs"},
                                 fixtures::three_line_lexicon())
                         .model;
  CHECK(kind_of([&] { merge_counts(three_line(), other); }) == ErrorKind::SchemaMismatch);
}

TEST_CASE("model file round trip") {
  const auto model = three_line();
  const auto text = serialize_model(model);
  CHECK(parse_model(text) == model);
  CHECK(serialize_model(parse_model(text)) == text);

  const auto t4_text = read_file(fixtures::fixture_path("t4.json"));
  CHECK(parse_model(t4_text) == fixtures::t4_counts());
  CHECK(serialize_model(fixtures::t4_counts()) == t4_text);
}

TEST_CASE("model file errors") {
  const auto text = serialize_model(three_line());
  CHECK(kind_of([&] { parse_model(text.substr(0, text.size() / 2)); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_model(""); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_model(read_file(fixtures::fixture_path("tampered.json"))); }) == ErrorKind::ParseError);

  auto bad_version = text;
  bad_version.replace(bad_version.find("\"version\":1"), 11, "\"version\":9");
  CHECK(kind_of([&] { parse_model(bad_version); }) == ErrorKind::VersionMismatch);

  auto bad_total = text;
  bad_total.replace(bad_total.find("\"total_tokens\":9"), 16, "\"total_tokens\":8");
  CHECK(kind_of([&] { parse_model(bad_total); }) == ErrorKind::ParseError);

  auto unsorted = text;
  unsorted.replace(unsorted.find("\"barks\""), 7, "\"zzzzz\"");
  CHECK(kind_of([&] { parse_model(unsorted); }) == ErrorKind::ParseError);

  try {
    parse_model("{\"version\":1,");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  CHECK(kind_of([] { load_model("/nonexistent/model.json"); }) == ErrorKind::IoError);
}

TEST_CASE("input files") {
  CHECK(parse_feature_list("softly\n# comment\n\n  loudly \n") == std::vector<std::string>{"softly", "loudly"});
  const auto lex = std::get<Lexicon>(parse_label_source(read_file(fixtures::fixture_path("three_line.labels"))));
  CHECK(lex.tasks == std::vector<std::string>{"animal_cat"});
  CHECK(lex.labels.at("cat") == std::vector<std::uint8_t>{1});
  CHECK(lex.labels.size() == 7);

  const auto occ = std::get<OccurrenceLabels>(parse_label_source("@occurrence\tsense\tpos\n"));
  CHECK(occ.tasks == std::vector<std::string>{"sense", "pos"});

  CHECK(kind_of([] { parse_label_source("word\tt\ncat\t2\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_label_source("word\tt\ncat\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_label_source(""); }) == ErrorKind::ParseError);
}

TEST_CASE("tsv export") {
  const auto tsv = export_tsv(three_line());
  CHECK(tsv.rfind("word\tn\ty_animal_cat\tc_softly\n", 0) == 0);
  CHECK(tsv.find("cat\t2\t2\t2\n") != std::string::npos);
}
