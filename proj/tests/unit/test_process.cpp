#include <gtest/gtest.h>

#include "rqa/errors.hpp"
#include "rqa/process.hpp"

using namespace rqa;

TEST(ProcessSpec, ParsesEachType) {
  const auto g = parse_process_spec(R"({"type":"iid_gaussian","sigma":2})");
  ASSERT_TRUE(std::holds_alternative<IidGaussian>(g));
  EXPECT_EQ(std::get<IidGaussian>(g).sigma, 2.0);
  EXPECT_EQ(natural_metric(g), Metric::Chebyshev);

  const auto mk = parse_process_spec(R"({"type":"markov","transition":[[0.6,0.4],[0.8,0.2]]})");
  ASSERT_TRUE(std::holds_alternative<MarkovSpec>(mk));
  EXPECT_EQ(std::get<MarkovSpec>(mk).p(1, 0), 0.8);
  EXPECT_EQ(natural_metric(mk), Metric::Discrete);

  const auto flat = parse_process_spec(R"({"type":"markov","states":2,"transition":[0.6,0.4,0.8,0.2]})");
  EXPECT_EQ(std::get<MarkovSpec>(flat).p(0, 1), 0.4);

  const auto ar = parse_process_spec(R"({"type":"ar","theta":[0.25,0.4,0.3],"sigma2":1.5})");
  ASSERT_TRUE(std::holds_alternative<ArSpec>(ar));
  EXPECT_EQ(std::get<ArSpec>(ar).theta.size(), 3u);
  EXPECT_EQ(process_type(ar), "ar");
}

TEST(ProcessSpec, JsonRoundTrip) {
  for (const char* text : {R"({"type":"iid_gaussian","sigma":0.3})",
                           R"({"type":"markov","transition":[[0.362,0.438,0.2],[0.484,0.447,0.069],[0.12,0.503,0.377]]})",
                           R"({"type":"ar","theta":[0.25,0.4,0.3],"sigma2":1.5})"}) {
    const auto spec = parse_process_spec(text);
    EXPECT_EQ(to_json(parse_process_spec(to_json(spec))), to_json(spec));
  }
}

TEST(ProcessSpec, Errors) {
  EXPECT_THROW(parse_process_spec("{"), DataError);
  EXPECT_THROW(parse_process_spec(R"({"type":"garch"})"), DataError);
  EXPECT_THROW(parse_process_spec(R"({"type":"iid_gaussian","sigma":-1})"), DataError);
  EXPECT_THROW(parse_process_spec(R"({"type":"markov","transition":[[0.5,0.5],[0.5]]})"), DataError);
  EXPECT_THROW(parse_process_spec(R"({"type":"markov","transition":[[0,1],[1,0]]})"), NumericError);
  EXPECT_THROW(parse_process_spec(R"({"type":"ar","theta":[1.2],"sigma2":1})"), NumericError);
  EXPECT_THROW(parse_process_spec(R"({"type":"ar","theta":"x","sigma2":1})"), DataError);
}
