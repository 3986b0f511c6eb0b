#include "modsplit/coefficients.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

using namespace modsplit;

namespace {

// Expression written as in the printed formulas: a prefactor times a sum of
// integer multiples of operator strings such as "D Db^2 D". D is the momentum
// derivative, Db the gradient derivative, Db3 the triple contraction.
struct Printed {
  int tau_power;
  long long pre_num, pre_den;
  std::vector<std::pair<long long, std::string>> terms;
};

DerivativeWord word_of(const std::string& ops) {
  if (ops == "Db3") return DerivativeWord::dbar3();
  std::vector<Letter> letters;
  std::istringstream ss(ops);
  std::string tok;
  while (ss >> tok) {
    int power = 1;
    const auto caret = tok.find('^');
    if (caret != std::string::npos) {
      power = std::stoi(tok.substr(caret + 1));
      tok = tok.substr(0, caret);
    }
    REQUIRE((tok == "D" || tok == "Db"));
    for (int k = 0; k < power; ++k) letters.push_back(tok == "D" ? Letter::Dp : Letter::Dg);
  }
  return DerivativeWord(letters);
}

using Key = std::pair<int, std::string>;

std::map<Key, std::pair<long long, long long>> expand(const std::vector<Printed>& printed) {
  std::map<Key, std::pair<long long, long long>> out;
  for (const auto& p : printed)
    for (const auto& [c, ops] : p.terms) out[{p.tau_power, word_of(ops).name()}] = {p.pre_num * c, p.pre_den};
  return out;
}

void check_table(const std::vector<CorrectionTerm>& table, const std::vector<Printed>& printed) {
  const auto expected = expand(printed);
  CHECK(table.size() == expected.size());
  for (const auto& t : table) {
    const Key key{t.tau_power, t.word.name()};
    INFO("tau^" << t.tau_power << " " << t.word.name());
    REQUIRE(expected.count(key) == 1);
    const auto [num, den] = expected.at(key);
    CHECK(t.coeff.num * den == num * t.coeff.den);
  }
}

}  // namespace

TEST_CASE("potential corrections match the printed generators") {
  check_table(potential_correction_terms(), {
                                                {2, 1, 24, {{1, "Db"}}},
                                                {4, 1, 480, {{1, "Db^2"}}},
                                                {6, 1, 161280, {{17, "Db^3"}, {-10, "Db3"}}},
                                            });
}

TEST_CASE("kinetic corrections match the printed generators") {
  check_table(kinetic_correction_terms(),
              {
                  {2, -1, 12, {{1, "D^2"}}},
                  {4, 1, 720, {{1, "D^4"}, {-9, "Db D^2"}, {3, "D Db D"}}},
                  {6,
                   -1,
                   60480,
                   {{2, "D^6"},
                    {-40, "Db D^4"},
                    {46, "D Db D^3"},
                    {-15, "D^2 Db D^2"},
                    {54, "Db^2 D^2"},
                    {-9, "Db D Db D"},
                    {-42, "D Db^2 D"},
                    {12, "D^2 Db^2"}}},
              });
}

TEST_CASE("generating function terms match the printed expansion") {
  check_table(generating_correction_terms(),
              {
                  {3, -1, 12, {{1, "D^2"}}},
                  {4, -1, 24, {{1, "D^3"}}},
                  {5, -1, 240, {{3, "D^4"}, {3, "Db D^2"}, {-1, "D Db D"}}},
                  {6, -1, 720, {{2, "D^5"}, {8, "Db D^3"}, {-5, "D Db D^2"}}},
                  {7,
                   -1,
                   20160,
                   {{10, "D^6"},
                    {10, "Db D^4"},
                    {90, "D Db D^3"},
                    {-75, "D^2 Db D^2"},
                    {18, "Db^2 D^2"},
                    {-3, "Db D Db D"},
                    {-14, "D Db^2 D"},
                    {4, "D^2 Db^2"}}},
                  {8,
                   -1,
                   40320,
                   {{3, "D^7"},
                    {-87, "Db D^5"},
                    {231, "D Db D^4"},
                    {-133, "D^2 Db D^3"},
                    {63, "Db^2 D^3"},
                    {-3, "D Db^2 D^2"},
                    {-21, "D^2 Db^2 D"},
                    {4, "D^3 Db^2"},
                    {-63, "Db D Db D^2"},
                    {25, "D Db D Db D"}}},
              });
}

TEST_CASE("truncation per order") {
  CHECK(potential_truncation(2) == 0);
  CHECK(potential_truncation(8) == 6);
  CHECK(generating_truncation(2) == 0);
  CHECK(generating_truncation(4) == 4);
  CHECK(generating_truncation(6) == 6);
  CHECK(generating_truncation(8) == 8);
  CHECK_THROWS_AS(generating_truncation(5), ConfigError);

  const auto c4 = EffectiveCoefficients::for_order(4);
  CHECK(c4.potential.size() == 1);
  CHECK(c4.generating.size() == 2);
  const auto c8 = EffectiveCoefficients::for_order(8);
  CHECK(c8.potential.size() == potential_correction_terms().size());
  CHECK(c8.generating.size() == generating_correction_terms().size());
  CHECK(EffectiveCoefficients::for_order(2).generating.empty());
}

TEST_CASE("required words are exactly the words the corrections use") {
  for (int order : {4, 6, 8}) {
    std::set<std::string> used;
    for (const auto& t : potential_correction_terms())
      if (t.tau_power <= order - 2) used.insert(t.word.name());
    for (const auto& t : generating_correction_terms())
      if (t.tau_power <= order) used.insert(t.word.name());
    std::set<std::string> listed;
    for (const auto& w : required_words(order)) listed.insert(w.name());
    CHECK(listed == used);
  }
  CHECK(required_words(6).size() == 10);
  CHECK(required_words(8).size() == 30);
}

TEST_CASE("rational values") {
  CHECK(Rational{-10, 161280}.value() == doctest::Approx(-10.0 / 161280.0));
  CHECK(Rational{3, 1}.value() == 3.0);
}
