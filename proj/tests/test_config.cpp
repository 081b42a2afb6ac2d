#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "modchar/config.hpp"
#include "modchar/error.hpp"
#include "modchar/report.hpp"

using namespace modchar;

namespace {

const char* kMinimal = R"({
  "character": {"modulus": 3, "exponents": [1]},
  "modifications": [{"p": 3, "angle": [0, 1]}]
})";

std::string config_error(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Config);
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(MODCHAR_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, MinimalRoundTrip) {
  const auto cfg = parse_config(kMinimal);
  EXPECT_EQ(cfg.character.modulus, 3u);
  EXPECT_EQ(cfg.x_max, 1000000u);
  EXPECT_FALSE(cfg.orders.has_value());
  EXPECT_EQ(parse_config(serialize_config(cfg)), cfg);
  EXPECT_EQ(serialize_config(parse_config(serialize_config(cfg))), serialize_config(cfg));
}

TEST(Config, FullRoundTrip) {
  RunConfig cfg;
  cfg.character = {20, {1, 2}, std::nullopt};
  cfg.modifications = {{2, 1, 3}, {5, 3, 4}, {7, 0, 1}};
  cfg.x_max = 12345;
  cfg.checkpoints = CheckpointRule::parse("every:100");
  cfg.orders = std::vector<int>{0, 5, 39};
  cfg.gamma = 0.37;
  cfg.precision = 1e-9;
  cfg.outputs = {{"csv", "a.csv"}, {"gnuplot", "p.gp"}};
  cfg.allow_imprimitive = true;
  cfg.notes = {"x"};
  EXPECT_EQ(parse_config(serialize_config(cfg)), cfg);
}

TEST(Config, AngleHalfIsMinusOne) {
  const auto cfg = parse_config(R"({"character": {"modulus": 3, "exponents": [1]},
    "modifications": [{"p": 7, "angle": [1, 2]}]})");
  const auto mc = build_modified(cfg);
  EXPECT_EQ(mc.at_prime(7), UnitValue::minus_one());
  EXPECT_EQ(eval_f_oracle(mc, 49), UnitValue::one());
}

TEST(Config, NonPrimeKeyCitesPrimality) {
  const std::string text = "{\n  \"character\": {\"modulus\": 3, \"exponents\": [1]},\n"
                           "  \"modifications\": [\n    {\"p\": 10, \"angle\": [1, 2]}\n  ]\n}";
  const auto msg = config_error(text);
  EXPECT_NE(msg.find("prime"), std::string::npos) << msg;
  EXPECT_NE(msg.find("10"), std::string::npos) << msg;
  EXPECT_EQ(msg.rfind("cfg.json:4:", 0), 0u) << msg;
}

TEST(Config, UnknownFieldLocated) {
  const auto msg = config_error("{\n  \"character\": {\"modulus\": 3, \"exponents\": [1]},\n  \"modifs\": []\n}");
  EXPECT_EQ(msg.rfind("cfg.json:3:", 0), 0u) << msg;
  EXPECT_NE(msg.find("modifs"), std::string::npos) << msg;
}

TEST(Config, SchemaViolations) {
  const std::string head = R"({"character": {"modulus": 3, "exponents": [1]}, )";
  config_error("{");
  config_error("[]");
  config_error(R"({"modifications": []})");
  config_error(head + R"("modifications": [{"p": 5, "angle": [1, 0]}]})");
  config_error(head + R"("modifications": [{"p": 5, "angle": [1]}]})");
  config_error(head + R"("modifications": [{"p": 5}]})");
  config_error(head + R"("modifications": [{"p": 5, "angle": [0, 1]}, {"p": 5, "angle": [1, 2]}]})");
  config_error(head + R"("modifications": [], "gamma": 0})");
  config_error(head + R"("modifications": [], "precision": 2})");
  config_error(head + R"("modifications": [], "orders": "all"})");
  config_error(head + R"("modifications": [], "outputs": [{"format": "png", "path": "x"}]})");
  config_error(head + R"("modifications": [], "checkpoints": "cubic"})");
  config_error(head + R"("modifications": [], "x_max": -5})");
  config_error(R"({"character": {"modulus": 0, "exponents": []}, "modifications": []})");
}

TEST(Config, CharacterErrorsSurfaceAtBuild) {
  // Mod 9 exponent 3 has conductor 3.
  const auto cfg = parse_config(R"({"character": {"modulus": 9, "exponents": [3]}, "modifications": []})");
  EXPECT_THROW(build_modified(cfg), Error);
  auto loose = cfg;
  loose.allow_imprimitive = true;
  EXPECT_NO_THROW(build_modified(loose));
}

TEST(Config, AutoOrders) {
  auto cfg = preset_config("fig1");
  const auto mc = build_modified(cfg);
  EXPECT_EQ(resolve_orders(cfg, mc), std::vector<int>{39});
  cfg.orders = std::vector<int>{2, 3};
  EXPECT_EQ(resolve_orders(cfg, mc), (std::vector<int>{2, 3}));
}

TEST(Presets, FilesMatchBuiltIns) {
  const std::string dir = MODCHAR_PRESET_DIR;
  for (const auto& name : preset_names()) {
    const auto path = std::filesystem::path(dir) / (name + ".json");
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(load_config(path.string()), preset_config(name)) << name;
  }
}

TEST(Presets, ExpectedNAndNotes) {
  for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{{"fig1", 4}, {"fig2", 3}, {"fig3", 0}, {"bcc", 1}}) {
    EXPECT_EQ(build_modified(preset_config(name)).N(), n) << name;
    EXPECT_EQ(preset_expected_N(name), n);
  }
  bool mentions_ten = false;
  for (const auto& note : preset_config("fig3").notes) mentions_ten |= note.find("f(10)") != std::string::npos;
  EXPECT_TRUE(mentions_ten);
  EXPECT_THROW(preset_config("fig4"), Error);
}

TEST(Report, CsvIdenticalAcrossThreadCounts) {
  const auto mc = build_modified(preset_config("fig2"));
  std::string reference;
  for (int threads : {1, 2, 4}) {
    SieveOptions opts;
    opts.threads = threads;
    opts.block_size = 1 << 12;
    const auto csv = partial_sums_csv(partial_sums(mc, 200000, CheckpointRule::parse("geometric:1.05"), opts));
    if (reference.empty()) reference = csv;
    EXPECT_EQ(csv, reference) << threads;
  }
  EXPECT_EQ(reference.rfind("x,re_sum,im_sum\n", 0), 0u);
}

TEST(Report, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Report, PresetBundle) {
  auto bundle = run_preset("bcc");
  bundle.config.outputs = {{"json", "report.json"}, {"csv", "partial_sums.csv"}, {"gnuplot", "plot.gp"}};
  const auto json = Json::parse(emit_report(bundle, "json"));
  EXPECT_EQ(json["N"], 1);
  EXPECT_EQ(json["N_matches_caption"], true);
  EXPECT_NE(emit_report(bundle, "gnuplot").find("plot"), std::string::npos);
  const auto dir = std::filesystem::temp_directory_path() / "modchar_report_test";
  std::filesystem::remove_all(dir);
  write_outputs(bundle, dir.string());
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_EQ(read_file(dir / "partial_sums.csv"), emit_report(bundle, "csv"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  const auto dir = std::filesystem::temp_directory_path() / "modchar_cli_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "bad.json") << R"({"character": {"modulus": 3, "exponents": [1]}, "modifications": [{"p": 10, "angle": [1, 2]}]})";
  std::ofstream(dir / "good.json") << kMinimal;
  EXPECT_EQ(run_cli("describe " + (dir / "good.json").string()), 0);
  EXPECT_EQ(run_cli("describe " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(run_cli("describe " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("--bogus"), 2);
  EXPECT_EQ(run_cli("preset fig9"), 2);
  EXPECT_EQ(run_cli("lfun --modulus 3 --label 3.2 --s 1e-300 --t 0 --eps 1e-16"), 1);
  EXPECT_EQ(run_cli("lfun --modulus 3 --label 3.2 --s 0.3"), 0);
  std::filesystem::remove_all(dir);
}
