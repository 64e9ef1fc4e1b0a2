#include "conefold/cli_io.hpp"

#include <gtest/gtest.h>

#include <cstring>

using namespace conefold;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("conefold_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

json minimal_cone() { return {{"mode", "cone-discrete"}, {"selector", {{"u", 1}, {"v", 1}, {"coupling", "M"}}}}; }

}  // namespace

TEST(ParseJob, MinimalConeJobTakesDefaults) {
  const JobConfig c = parse_job_json(minimal_cone());
  EXPECT_EQ(c.mode, JobMode::ConeDiscrete);
  EXPECT_EQ(c.faces, 12);
  EXPECT_EQ(c.seed, 0u);
  EXPECT_DOUBLE_EQ(c.tolerances.at("closure"), 1e-9);
  ASSERT_TRUE(c.selector.has_value());
  EXPECT_EQ(c.selector->label(), "u=1 v=1 M");
}

TEST(ParseJob, SchemaErrors) {
  EXPECT_NE(error_of([] { parse_job_json({{"mode", "cone-discrete"}}); }).find("selector"), std::string::npos);
  auto j = minimal_cone();
  j["tolerances"] = {{"closure", -1.0}};
  EXPECT_NE(error_of([&] { parse_job_json(j); }).find("must be positive"), std::string::npos);
  j = minimal_cone();
  j["colour"] = 1;
  j["profile"] = {};
  const auto msg = error_of([&] { parse_job_json(j); });
  EXPECT_NE(msg.find("'colour'"), std::string::npos);
  EXPECT_NE(msg.find("'profile'"), std::string::npos);
  j = minimal_cone();
  j["selector"]["w"] = 2;
  EXPECT_NE(error_of([&] { parse_job_json(j); }).find("'w'"), std::string::npos);
  EXPECT_THROW(parse_job_json({{"mode", "sphere"}}), JobError);
  EXPECT_THROW(parse_job_json({{"mode", "cyl-smooth"}, {"profile", {{"kind", "constant"}, {"domain", {0, 1}}}}}), JobError);
  EXPECT_THROW(parse_job_json({{"mode", "cyl-smooth"}, {"profile", {{"kind", "constant"}, {"domain", {0, 1}}}}, {"I", {1.0}},
                               {"I_above_min", {1.0}}}),
               JobError);
}

TEST(ParseJob, AllSamplesParse) {
  for (const auto& e : std::filesystem::directory_iterator(CONEFOLD_SAMPLES_DIR))
    if (e.path().extension() == ".json") {
      EXPECT_NO_THROW(parse_job(e.path())) << e.path();
    }
}

TEST(ExportObj, UnitTriangle) {
  Mesh m;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  m.faces = {{0, 1, 2}};
  EXPECT_EQ(obj_text(m), "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
}

TEST(ExportObj, RoundTripIsBitExact) {
  Mesh m;
  m.vertices = {Vec3(0.1, -1.0 / 3.0, 1e-300), Vec3(std::sqrt(2.0), kPi, -2.5e17)};
  m.faces = {{0, 1, 0}};
  const auto dir = scratch("roundtrip");
  export_obj(m, dir / "m.obj");
  const Mesh back = read_obj(dir / "m.obj");
  ASSERT_EQ(back.vertices.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_EQ(std::memcmp(back.vertices[i].data(), m.vertices[i].data(), sizeof(double) * 3), 0);
  EXPECT_EQ(back.faces, m.faces);
}

TEST(ExportObj, SequenceNames) {
  Mesh m;
  m.vertices = {Vec3::Zero()};
  const auto paths = export_obj_sequence(std::vector<Mesh>(20, m), scratch("seq"));
  ASSERT_EQ(paths.size(), 20u);
  EXPECT_EQ(paths.front().filename(), "frame_000.obj");
  EXPECT_EQ(paths.back().filename(), "frame_019.obj");
  EXPECT_THROW(export_obj(m, "/proc/conefold/forbidden.obj"), std::exception);
}

TEST(RunJob, ConeDiscreteClosure) {
  auto j = minimal_cone();
  j["free"] = {{"m", 0.5}, {"s1", 0.7}, {"s3", 0.3}, {"t1", 0.9}};
  j["sweep"] = {{"samples", 8}};
  const auto res = run_job(parse_job_json(j));
  EXPECT_TRUE(res.report.passed());
  const auto mx = res.report.maxima();
  EXPECT_LT(mx.at("closure"), 1e-9);
  EXPECT_EQ(res.frames.size(), 10u);
  int flat = 0;
  for (const auto& r : res.report.rows) flat += r.name == "flat_state";
  EXPECT_EQ(flat, 2);
  for (std::size_t i = 1; i < res.report.rows.size(); ++i)
    EXPECT_LE(res.report.rows[i - 1].parameter, res.report.rows[i].parameter);
}

TEST(RunJob, CylSmoothEllipseGivesUnitCurvature) {
  const auto res = run_job(parse_job(std::filesystem::path(CONEFOLD_SAMPLES_DIR) / "cyl_smooth_ellipse.json"), false);
  EXPECT_TRUE(res.report.passed());
  EXPECT_LT(res.report.maxima().at("kappa_error"), 1e-8);
  EXPECT_TRUE(res.frames.empty());
}

TEST(RunJob, InfeasibleBranchNamesTheFactor) {
  const auto job = parse_job(std::filesystem::path(CONEFOLD_SAMPLES_DIR) / "infeasible_branch.json");
  const auto msg = error_of([&] { run_job(job); });
  EXPECT_NE(msg.find("discrete_cone: excluded case"), std::string::npos) << msg;
}

TEST(RunJob, FailingThresholdFailsTheReport) {
  auto j = minimal_cone();
  j["free"] = {{"m", 0.5}, {"s1", 0.7}, {"s3", 0.3}, {"t1", 0.9}};
  j["sweep"] = {{"samples", 2}};
  j["tolerances"] = {{"closure", 1e-30}};
  EXPECT_FALSE(run_job(parse_job_json(j)).report.passed());
}

TEST(RunJob, ArtifactsAreByteIdentical) {
  const auto job = parse_job(std::filesystem::path(CONEFOLD_SAMPLES_DIR) / "cone_random.json");
  const auto a = scratch("det_a"), b = scratch("det_b");
  write_artifacts(run_job(job), a, true, true);
  write_artifacts(run_job(job), b, true, true);
  int files = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(b / std::filesystem::relative(e.path(), a))) << e.path();
  }
  EXPECT_GT(files, 20);
}
