#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rascal/rascal.hpp"
#include "support/oracles.hpp"

namespace rascal {
namespace {

Dataset csv(const std::string& text, const std::string& class_column = "class") {
  std::istringstream in(text);
  return load_csv(in, class_column);
}

OperationalRule rule_from(const std::string& body, const Schema& schema) {
  auto res = operationalize(parse_ruleset("class <- " + body + ".", schema));
  return res.rules.at(0);
}

TEST(Schema, RejectsBadAttributes) {
  EXPECT_THROW(Schema({{"a", {"T"}}}, {"c", {"F", "T"}}), DataError);
  EXPECT_THROW(Schema({{"a", {"F", "T"}}, {"a", {"F", "T"}}}, {"c", {"F", "T"}}), DataError);
  EXPECT_THROW(Schema({{"c", {"F", "T"}}}, {"c", {"F", "T"}}), DataError);
  EXPECT_THROW(Schema({{"a", {"F", "F"}}}, {"c", {"F", "T"}}), DataError);
}

TEST(LoadCsv, BinaryFeaturesInferSortedDomains) {
  Dataset d = csv("a,b,class\nT,F,T\nF,T,F\nT,T,T\n");
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.schema().num_features(), 2u);
  EXPECT_EQ(d.schema().feature(0).domain, (std::vector<std::string>{"F", "T"}));
  EXPECT_EQ(d.schema().class_attribute().domain, (std::vector<std::string>{"F", "T"}));
  EXPECT_EQ(d[0].values, (std::vector<ValueId>{1, 0}));
}

TEST(LoadCsv, ClassColumnMayBeAnywhere) {
  Dataset d = csv("label,a,b\nyes,T,F\nno,F,F\n", "label");
  EXPECT_EQ(d.schema().class_attribute().name, "label");
  EXPECT_EQ(d.schema().feature(0).name, "a");
  EXPECT_EQ(d.schema().feature(1).name, "b");
}

TEST(LoadCsv, NucleotideColumns) {
  std::mt19937_64 rng(5);
  std::string text;
  for (int p = 1; p <= 57; ++p) text += "p" + std::to_string(p) + ",";
  text += "class\n";
  const char* alphabet = "ACGT";
  for (int row = 0; row < 40; ++row) {
    for (int p = 0; p < 57; ++p) text += std::string(1, alphabet[rng() % 4]) + ",";
    text += row % 2 ? "+\n" : "-\n";
  }
  Dataset d = csv(text);
  EXPECT_EQ(d.schema().num_features(), 57u);
  for (const auto& f : d.schema().features())
    for (const auto& v : f.domain) EXPECT_NE(std::string("ACGT").find(v), std::string::npos);
}

TEST(LoadCsv, Errors) {
  try {
    csv("a,class\nT,T\nF\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(csv(""), DataError);
  EXPECT_THROW(csv("a,b\nT,F\nF,T\n"), DataError);             // class column absent
  EXPECT_THROW(csv("a,class\nT,T\nF,T\n"), DataError);         // single class label
  EXPECT_THROW(csv("a,class\nT,T\n?,F\n"), DataError);         // missing value
  EXPECT_THROW(csv("a,class\nA,T\nA,F\n"), DataError);         // single non-boolean value
}

TEST(LoadCsv, SingleBooleanValueWidensToBooleanDomain) {
  Dataset d = csv("a,class\nT,T\nT,F\n");
  EXPECT_EQ(d.schema().feature(0).domain, (std::vector<std::string>{"F", "T"}));
}

TEST(LoadCsv, QuotedFieldsAndCrlf) {
  Dataset d = csv("\"a\",\"class\"\r\n\"x,y\",T\r\nz,\"F\"\r\n");
  EXPECT_EQ(d.schema().feature(0).domain, (std::vector<std::string>{"x,y", "z"}));
  std::ostringstream out;
  save_csv(d, out);
  EXPECT_EQ(out.str(), "a,class\n\"x,y\",T\nz,F\n");
}

TEST(LoadCsv, SchemaOverrideAddsUnobservedValues) {
  std::istringstream schema_text("feature a A C G T\nclass class F T\n");
  Schema schema = load_schema(schema_text);
  std::istringstream in("a,class\nA,T\nA,F\n");
  Dataset d = load_csv(in, "class", schema);
  EXPECT_EQ(d.schema().feature(0).arity(), 4u);
  std::istringstream bad("a,class\nU,T\n");
  EXPECT_THROW(load_csv(bad, "class", schema), DataError);
}

TEST(SaveCsv, HeaderOnlyForEmptyDataset) {
  Dataset d(Schema({{"a", {"F", "T"}}}, {"class", {"F", "T"}}));
  std::ostringstream out;
  save_csv(d, out);
  EXPECT_EQ(out.str(), "a,class\n");
}

TEST(SaveCsv, ProvenanceColumn) {
  Schema s({{"a", {"F", "T"}}}, {"class", {"F", "T"}});
  Dataset d(s, {Instance{{1}, 1, Provenance::original()}, Instance{{0}, 1, Provenance::from_rule(3)}});
  std::ostringstream out;
  save_csv(d, out, true);
  EXPECT_EQ(out.str(), "a,class,__provenance\nT,T,original\nF,T,virtual:3\n");
  std::istringstream in(out.str());
  EXPECT_EQ(load_csv(in, "class", s), d);
}

// Round trip over random datasets in which every domain value occurs, so
// inferred domains reproduce the original schema.
TEST(SaveCsv, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t k = 1 + rng() % 5;
    std::vector<Attribute> features;
    for (std::size_t f = 0; f < k; ++f) {
      Attribute a{"f" + std::to_string(f), {}};
      const std::size_t arity = 2 + rng() % 3;
      for (std::size_t v = 0; v < arity; ++v) a.domain.push_back(std::string(1, static_cast<char>('a' + v)));
      features.push_back(a);
    }
    Schema s(features, {"class", {"neg", "pos"}});
    Dataset d(s);
    for (ValueId v = 0; v < 4; ++v)  // cover every value of every domain
      d.add(Instance{std::vector<ValueId>(k, 0), static_cast<ValueId>(v % 2), {}});
    for (std::size_t f = 0; f < k; ++f)
      for (ValueId v = 0; v < s.feature(f).arity(); ++v) {
        std::vector<ValueId> vals(k, 0);
        vals[f] = v;
        d.add(Instance{vals, static_cast<ValueId>(rng() % 2), {}});
      }
    for (int i = 0; i < 20; ++i) {
      std::vector<ValueId> vals;
      for (std::size_t f = 0; f < k; ++f) vals.push_back(static_cast<ValueId>(rng() % s.feature(f).arity()));
      d.add(Instance{vals, static_cast<ValueId>(rng() % 2), {}});
    }
    std::ostringstream out;
    save_csv(d, out);
    std::istringstream in(out.str());
    EXPECT_EQ(load_csv(in, "class"), d);
  }
}

TEST(SchemaFile, RoundTrip) {
  Schema s({{"a", {"F", "T"}}, {"p", {"A", "C", "G"}}}, {"class", {"EI", "IE", "N"}});
  std::ostringstream out;
  save_schema(s, out);
  std::istringstream in(out.str());
  EXPECT_EQ(load_schema(in), s);
}

TEST(LoadUci, PromoterFormat) {
  std::string seq1 = "tactagcaatacgcttgcgttcggtggttaagtatgtataatgcgcgggcttgtcgt";
  std::string seq2 = "tgctatcctgacagttgtcacgctgattggtgtcgttacaatctaacgcatcgccaa";
  ASSERT_EQ(seq1.size(), 57u);
  std::istringstream in("+,S10,\t\t" + seq1 + "\n-,867,\t\t" + seq2 + "\n");
  Dataset d = load_uci_molbio(in);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.schema().num_features(), 57u);
  EXPECT_EQ(d.schema().feature(0).name, "p1");
  EXPECT_EQ(d.schema().class_attribute().domain, (std::vector<std::string>{"+", "-"}));
  EXPECT_EQ(d.schema().value_name(0, d[0].values[0]), "T");
}

TEST(LoadUci, SpliceFormatKeepsAmbiguityCodes) {
  std::istringstream in(
      "EI, ATRINS-DONOR-521,  CCAGCTGCATCACAGGAGGCCAGCGAGCAGG\n"
      "IE, ATRINS-ACCEPTOR-701, AGACCCGCCGGGAGGCGGAGGACCTGCAGGD\n"
      "N, AGMKPNRSB-NEG-1,  GAGCGGATGCTGCTGGGGAACTCNACAGGGS\n");
  Dataset d = load_uci_molbio(in);
  EXPECT_EQ(d.schema().class_attribute().domain, (std::vector<std::string>{"EI", "IE", "N"}));
  EXPECT_EQ(d.schema().feature(0).domain, (std::vector<std::string>{"A", "C", "D", "G", "N", "S", "T"}));
}

TEST(LoadUci, Errors) {
  std::istringstream ragged("+,a,ACGT\n-,b,ACG\n");
  EXPECT_THROW(load_uci_molbio(ragged), DataError);
  std::istringstream alien("+,a,ACGT\n-,b,AC9T\n");
  EXPECT_THROW(load_uci_molbio(alien), DataError);
  std::istringstream malformed("+ ACGT\n");
  EXPECT_THROW(load_uci_molbio(malformed), DataError);
}

TEST(Conforms, TemplateInstance) {
  Schema s = boolean_schema(5);  // x1..x5 stand for a, b, x, y, z
  OperationalRule r = rule_from("x1 & x3 & !x4", s);
  Instance inst{{1, 1, 1, 0, 0}, 1, {}};
  EXPECT_TRUE(conforms(inst, r));
  inst.values[3] = 1;
  EXPECT_FALSE(conforms(inst, r));
}

TEST(Conforms, EmptyRuleIsVacuouslyTrue) {
  OperationalRule empty;
  EXPECT_TRUE(conforms(Instance{{0, 1, 0}, 0, {}}, empty));
}

TEST(Conforms, SchemaMismatch) {
  OperationalRule r{{Literal{5, 0, false}}, 0, 0};
  EXPECT_THROW(conforms(Instance{{0, 1}, 0, {}}, r), SchemaMismatch);
  Dataset d(boolean_schema(2));
  EXPECT_THROW(match_counts(d, r), SchemaMismatch);
}

TEST(Conforms, UnmentionedFeaturesDoNotMatter) {
  Schema s = boolean_schema(4);
  OperationalRule r = rule_from("x1 & !x3", s);
  testing::for_each_assignment(s, [&](const std::vector<ValueId>& a) {
    Instance base{a, 0, {}};
    for (FeatureId f : {FeatureId{1}, FeatureId{3}}) {
      Instance flipped = base;
      flipped.values[f] = 1 - flipped.values[f];
      EXPECT_EQ(conforms(base, r), conforms(flipped, r));
    }
  });
}

TEST(MatchCounts, EmptyAndSingleton) {
  Schema s = boolean_schema(2);
  OperationalRule r = rule_from("x1", s);
  EXPECT_EQ(match_counts(Dataset(s), r), (MatchCounts{0, 0}));
  Dataset one(s, {Instance{{1, 0}, r.class_label, {}}});
  EXPECT_EQ(match_counts(one, r), (MatchCounts{1, 1}));
}

TEST(MatchCounts, ExhaustiveThreeFeatureDataset) {
  Schema s = boolean_schema(3);
  // labels from x1 XOR x3, rule x1 & x2 concluding T
  Dataset d = testing::exhaustive_dataset(s, [](const std::vector<ValueId>& a) { return ValueId(a[0] ^ a[2]); });
  OperationalRule r = rule_from("x1 & x2", s);
  // Hand count: x1=x2=T covers (T,T,F) labelled T and (T,T,T) labelled F.
  EXPECT_EQ(match_counts(d, r), (MatchCounts{2, 1}));
  auto brute = testing::brute_counts(d, r);
  EXPECT_EQ(match_counts(d, r), (MatchCounts{brute.m, brute.s}));
}

TEST(MatchCounts, BoundedAndAdditive) {
  Schema s = boolean_schema(4);
  std::mt19937_64 rng(2);
  auto random_dataset = [&](std::size_t n) {
    Dataset d(s);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<ValueId> v;
      for (int f = 0; f < 4; ++f) v.push_back(static_cast<ValueId>(rng() % 2));
      d.add(Instance{v, static_cast<ValueId>(rng() % 2), {}});
    }
    return d;
  };
  for (int trial = 0; trial < 30; ++trial) {
    Dataset a = random_dataset(rng() % 30), b = random_dataset(rng() % 30);
    Dataset ab = a;
    for (const auto& inst : b.instances()) ab.add(inst);
    testing::RulesetGenerator gen(4, 0, static_cast<std::uint64_t>(trial));
    for (const auto& r : operationalize(parse_ruleset(gen.text(), s)).rules) {
      auto ca = match_counts(a, r), cb = match_counts(b, r), cab = match_counts(ab, r);
      EXPECT_LE(cab.successful, cab.matched);
      EXPECT_LE(cab.matched, ab.size());
      EXPECT_EQ(cab.matched, ca.matched + cb.matched);
      EXPECT_EQ(cab.successful, ca.successful + cb.successful);
    }
  }
}

}  // namespace
}  // namespace rascal
