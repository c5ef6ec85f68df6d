#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.h"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "qapnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = qapnet::cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void Spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Lines that are not provenance comments.
std::string Body(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out += line + '\n';
  return out;
}

std::vector<std::string> Fields(const std::string& line) {
  std::vector<std::string> f;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      f.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  f.push_back(cur);
  return f;
}

// The row of a CSV body whose first field equals `key`.
std::vector<std::string> Row(const std::string& body, const std::string& key) {
  std::istringstream in(body);
  std::string line;
  while (std::getline(in, line)) {
    auto f = Fields(line);
    if (!f.empty() && f[0] == key) return f;
  }
  return {};
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / fs::path("qapnet_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const Outcome o = RunCli({"synth", "--seed", "7", "--out-dir", (dir_ / "data").string(),
                              "--permutations", "199"});
    ASSERT_EQ(o.code, 0) << o.err;
    const Outcome i = RunCli({"ingest", "--contacts", P("data/contacts.csv"), "--attributes",
                              P("data/attributes.csv"), "--out", P("ingested.csv"),
                              "--exposures", P("exposures.csv")});
    ASSERT_EQ(i.code, 0) << i.err;
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string P(const std::string& rel) { return (dir_ / rel).string(); }

  static std::vector<std::string> FitArgs() {
    return {"fit",           "--spec",        P("data/model.json"),
            "--durations",   P("ingested.csv"), "--attributes", P("data/attributes.csv"),
            "--nominations", "friendship=" + P("data/nominations.csv"),
            "--respondents", P("data/respondents.csv")};
  }

  static fs::path dir_;
};

fs::path CliTest::dir_;

TEST_F(CliTest, SynthWritesEveryFile) {
  for (const char* f : {"contacts.csv", "attributes.csv", "nominations.csv", "respondents.csv",
                        "durations.csv", "model.json", "truth.csv"})
    EXPECT_TRUE(fs::exists(dir_ / "data" / f)) << f;
}

TEST_F(CliTest, SynthSameSeedGivesIdenticalFiles) {
  const std::vector<std::string> files = {"contacts.csv",    "attributes.csv", "nominations.csv",
                                          "respondents.csv", "durations.csv",  "model.json",
                                          "truth.csv"};
  std::vector<std::string> before;
  for (const auto& f : files) before.push_back(Slurp(dir_ / "data" / f));
  ASSERT_EQ(RunCli({"synth", "--seed", "7", "--out-dir", P("data"), "--permutations", "199"}).code,
            0);
  for (std::size_t k = 0; k < files.size(); ++k)
    EXPECT_EQ(before[k], Slurp(dir_ / "data" / files[k])) << files[k];
  ASSERT_EQ(RunCli({"synth", "--seed", "8", "--out-dir", P("other")}).code, 0);
  EXPECT_NE(Body(before[0]), Body(Slurp(dir_ / "other" / "contacts.csv")));
}

TEST_F(CliTest, FitSameSeedIsByteIdenticalAcrossThreadCounts) {
  auto a = FitArgs();
  a.insert(a.end(), {"--threads", "1"});
  auto b = FitArgs();
  b.insert(b.end(), {"--threads", "4"});
  const Outcome x = RunCli(a), y = RunCli(b), z = RunCli(a);
  ASSERT_EQ(x.code, 0) << x.err;
  ASSERT_EQ(y.code, 0) << y.err;
  EXPECT_EQ(x.out, z.out);
  EXPECT_EQ(Body(x.out), Body(y.out));
  EXPECT_NE(x.out.find("# effective_permutations=199"), std::string::npos);
  EXPECT_NE(x.out.find("# effective_seed=7"), std::string::npos);
}

TEST_F(CliTest, FitRecoversStrongTerms) {
  const Outcome o = RunCli(FitArgs());
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string body = Body(o.out);
  const auto friends = Row(body, "Being friends");
  ASSERT_EQ(friends.size(), 7u);
  EXPECT_NEAR(std::stod(friends[1]), 2.128, 0.5);
  EXPECT_LE(std::stod(friends[3]), 0.01);
  EXPECT_EQ(Row(body, "n_dyads").size(), 0u);
  EXPECT_NE(body.find(",870,199,7\n"), std::string::npos);
}

TEST_F(CliTest, SeedFlagChangesNullSummaries) {
  auto a = FitArgs();
  a.insert(a.end(), {"--seed", "11"});
  const Outcome x = RunCli(FitArgs()), y = RunCli(a);
  ASSERT_EQ(y.code, 0) << y.err;
  EXPECT_EQ(Row(Body(x.out), "Being friends")[1], Row(Body(y.out), "Being friends")[1]);
  EXPECT_NE(Row(Body(x.out), "Being friends")[4], Row(Body(y.out), "Being friends")[4]);
}

TEST_F(CliTest, PerSampleRestrictsToOneBlock) {
  auto a = FitArgs();
  a.insert(a.end(), {"--per-sample", "1", "--permutations", "50"});
  const Outcome o = RunCli(a);
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string body = Body(o.out);
  // 30 nodes: 435 dyads; the sample dummy is constant and reported blank.
  EXPECT_NE(body.find(",435,50,7\n"), std::string::npos);
  const auto sample_two = Row(body, "Sample two");
  ASSERT_EQ(sample_two.size(), 7u);
  EXPECT_EQ(sample_two[1], "");
  EXPECT_NE(o.err.find("Sample two"), std::string::npos);
}

TEST_F(CliTest, TransformNoneFitsRawDurations) {
  auto a = FitArgs();
  a.insert(a.end(), {"--transform", "none", "--permutations", "20"});
  const Outcome raw = RunCli(a);
  ASSERT_EQ(raw.code, 0) << raw.err;
  EXPECT_NE(raw.out.find("# effective_transform=none"), std::string::npos);
  const double log_intercept = std::stod(Row(Body(RunCli(FitArgs()).out), "(intercept)")[1]);
  const double raw_intercept = std::stod(Row(Body(raw.out), "(intercept)")[1]);
  EXPECT_NE(log_intercept, raw_intercept);
}

TEST_F(CliTest, JsonOutputCarriesConfig) {
  auto a = FitArgs();
  a.insert(a.end(), {"--permutations", "20", "--json", P("fit.json")});
  ASSERT_EQ(RunCli(a).code, 0);
  const std::string json = Slurp(dir_ / "fit.json");
  EXPECT_NE(json.find("\"config\""), std::string::npos);
  EXPECT_NE(json.find("\"Depression mean * being friends\""), std::string::npos);
}

TEST_F(CliTest, NoMergeKeepsMoreShorterEvents) {
  const Outcome merged = RunCli({"ingest", "--contacts", P("data/contacts.csv"), "--out",
                                 P("m.csv"), "--exposures", P("me.csv")});
  const Outcome raw = RunCli({"ingest", "--contacts", P("data/contacts.csv"), "--no-merge",
                              "--out", P("r.csv"), "--exposures", P("re.csv")});
  ASSERT_EQ(merged.code, 0) << merged.err;
  ASSERT_EQ(raw.code, 0) << raw.err;
  const std::regex events(R"((\d+) events)");
  std::smatch m1, m2;
  ASSERT_TRUE(std::regex_search(merged.err, m1, events));
  ASSERT_TRUE(std::regex_search(raw.err, m2, events));
  EXPECT_GT(std::stoul(m2[1]), std::stoul(m1[1]));
  EXPECT_NE(Slurp(dir_ / "m.csv"), Slurp(dir_ / "r.csv"));
  EXPECT_NE(Slurp(dir_ / "r.csv").find("# no-merge=true"), std::string::npos);
}

TEST_F(CliTest, MergeGapDefaultsToSeventyFive) {
  const Outcome o = RunCli({"ingest", "--contacts", P("data/contacts.csv"), "--out", P("d.csv"),
                            "--exposures", P("de.csv")});
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(Slurp(dir_ / "d.csv").find("# merge-gap=75\n"), std::string::npos);
}

TEST_F(CliTest, MergeGapZeroFusesOnlyTouchingEvents) {
  Spit(dir_ / "touch.csv",
       "sample_id,node_a,node_b,t_start,t_end\n"
       "1,a,b,0,10\n1,a,b,10,20\n1,a,b,21,30\n1,a,c,0,30\n");
  const Outcome o = RunCli({"ingest", "--contacts", P("touch.csv"), "--merge-gap", "0", "--window",
                            "3600", "--out", P("t.csv"), "--exposures", P("te.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.err.find("3 events"), std::string::npos) << o.err;
  const std::string body = Body(Slurp(dir_ / "t.csv"));
  const auto ab = Fields(body.substr(body.find("1,a,b"), body.find('\n', body.find("1,a,b")) -
                                                             body.find("1,a,b")));
  EXPECT_EQ(ab[3], "29");  // [0,20) + [21,30)
}

TEST_F(CliTest, SelectionReproducesPublishedCells) {
  const Outcome o =
      RunCli({"selection", "--coeffs", "2.504,-0.059,0.047,-0.004", "--range", "0:36"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto cell = [&](int vi, int vj) {
    return std::stod(Row(o.out, std::to_string(vi))[static_cast<std::size_t>(vj) + 1]);
  };
  EXPECT_NEAR(cell(5, 5), 9.12, 0.02 * 9.12);
  EXPECT_NEAR(cell(20, 20), 3.76, 0.02 * 3.76);
  EXPECT_NEAR(cell(4, 6), 8.61, 0.05 * 8.61);
  EXPECT_NEAR(cell(4, 16), 6.00, 0.05 * 6.00);
}

TEST_F(CliTest, SelectionWritesPpm) {
  ASSERT_EQ(RunCli({"selection", "--coeffs", "1,0,0,0", "--range", "0:3", "--out", P("g.csv"),
                    "--ppm", P("g.ppm"), "--ppm-scale", "2"})
                .code,
            0);
  EXPECT_EQ(Slurp(dir_ / "g.ppm").substr(0, 2), "P6");
}

TEST_F(CliTest, DescriptivesUsesSpearmanForBinaryVariables) {
  const Outcome o = RunCli({"descriptives", "--attributes", P("data/attributes.csv"),
                            "--durations", P("ingested.csv"), "--nominations",
                            "friendship=" + P("data/nominations.csv"), "--exposures",
                            P("exposures.csv"), "--test", "depression:ratio_dyadic",
                            "--permutations", "99"});
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string body = Body(o.out);
  EXPECT_NE(body.find("\ndepression,org,spearman,60,"), std::string::npos);
  EXPECT_NE(body.find("\ndepression,age,pearson,60,"), std::string::npos);
  EXPECT_NE(body.find("\nvar_a,var_b,n,r,p_one,p_two,permutations,seed\n"
                      "depression,ratio_dyadic,60,"),
            std::string::npos);
}

TEST_F(CliTest, ConfigFileValuesYieldToFlags) {
  Spit(dir_ / "run.toml", "[fit]\npermutations=30\nseed=5\n");
  auto a = FitArgs();
  a.insert(a.begin(), {"--config", P("run.toml")});
  a.insert(a.end(), {"--permutations", "20"});
  const Outcome o = RunCli(a);
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("# effective_permutations=20"), std::string::npos);
  EXPECT_NE(o.out.find("# effective_seed=5"), std::string::npos);
}

TEST_F(CliTest, DataDirResolvesRelativeInputs) {
  ::setenv("QAPNET_DATA_DIR", P("data").c_str(), 1);
  const Outcome o = RunCli({"fit", "--spec", "model.json", "--durations", "durations.csv",
                            "--attributes", "attributes.csv", "--nominations",
                            "friendship=nominations.csv", "--permutations", "20"});
  ::unsetenv("QAPNET_DATA_DIR");
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("# QAPNET_DATA_DIR="), std::string::npos);
}

TEST_F(CliTest, MissingInputIsAnInputError) {
  auto a = FitArgs();
  a[2] = P("no_such_model.json");
  const Outcome o = RunCli(a);
  EXPECT_EQ(o.code, qapnet::cli::kInputError);
  EXPECT_NE(o.err.find("no_such_model.json"), std::string::npos);
}

TEST_F(CliTest, MalformedContactsReportLine) {
  Spit(dir_ / "bad.csv", "sample_id,node_a,node_b,t_start,t_end\n1,a,b,5,1\n");
  const Outcome o = RunCli({"ingest", "--contacts", P("bad.csv"), "--out", P("x.csv"),
                            "--exposures", P("xe.csv")});
  EXPECT_EQ(o.code, qapnet::cli::kInputError);
  EXPECT_NE(o.err.find("line 2"), std::string::npos) << o.err;
  EXPECT_FALSE(fs::exists(dir_ / "x.csv"));
}

TEST_F(CliTest, RankDeficiencyNamesTerms) {
  Spit(dir_ / "collinear.json",
       R"j({"dependent": "seconds_per_hour", "permutations": 10, "terms": [
             {"label": "Age mean", "term": "mean(age)"},
             {"label": "Age mean again", "term": "mean(age)"}]})j");
  auto a = FitArgs();
  a[2] = P("collinear.json");
  const Outcome o = RunCli(a);
  EXPECT_EQ(o.code, qapnet::cli::kEstimationError);
  EXPECT_NE(o.err.find("Age mean again"), std::string::npos) << o.err;
}

TEST_F(CliTest, UsageErrorsFail) {
  EXPECT_NE(RunCli({}).code, 0);
  EXPECT_NE(RunCli({"fit"}).code, 0);
  EXPECT_NE(RunCli({"ingest", "--contacts", "x", "--group-rule", "nope"}).code, 0);
}

TEST(CliDocs, ShippedDefaultModelHasTwelveTerms) {
  std::ifstream in(fs::path(QAPNET_DOCS_DIR) / "default_model.json");
  ASSERT_TRUE(in);
  std::stringstream s;
  s << in.rdbuf();
  const std::string text = s.str();
  std::size_t terms = 0;
  for (std::size_t pos = 0; (pos = text.find("\"term\"", pos)) != std::string::npos; ++pos) ++terms;
  EXPECT_EQ(terms, 12u);
  EXPECT_NE(text.find("product(mean(depression),or(friendship))"), std::string::npos);
  EXPECT_NE(text.find("Depression mean * being friends"), std::string::npos);
  EXPECT_NE(text.find("\"permutations\": 5000"), std::string::npos);
}

TEST(CliBinary, VersionAndExitStatus) {
  const std::string cli = QAPNET_CLI_PATH;
  EXPECT_EQ(std::system((cli + " --version > /dev/null").c_str()), 0);
  EXPECT_NE(std::system((cli + " fit --spec /nonexistent --durations a --attributes b "
                                "> /dev/null 2>&1")
                            .c_str()),
            0);
}

}  // namespace
