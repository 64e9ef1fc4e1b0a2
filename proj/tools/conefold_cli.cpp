// conefold: run synthesis, flexion sweeps and planarity checks from JSON job files.

#include "conefold/cli_io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace conefold;

enum class Verb { Synth, Flex, Verify, Smooth, Export };

void require_mode(Verb verb, const JobConfig& job) {
  const bool smooth = is_smooth(job.mode);
  if ((verb == Verb::Synth || verb == Verb::Flex) && smooth)
    throw JobError("this verb needs a discrete job (cone-discrete or cyl-discrete), the job is " + to_string(job.mode));
  if (verb == Verb::Smooth && !smooth)
    throw JobError("'smooth' needs a cone-smooth or cyl-smooth job, the job is " + to_string(job.mode));
}

void print_summary(const ResidualReport& rep) {
  std::map<std::string, std::string> tol_of;
  for (const auto& r : rep.rows) tol_of[r.name] = r.tolerance;
  for (const auto& [name, mx] : rep.maxima()) {
    const auto& t = tol_of[name];
    if (t.empty()) {
      std::cout << "  " << name << " max " << fmt(mx) << "\n";
      continue;
    }
    const double th = rep.tolerances.at(t);
    std::cout << "  " << name << " max " << fmt(mx) << " <= " << fmt(th) << (mx <= th ? "  ok" : "  FAILED") << "\n";
  }
  for (const auto& n : rep.notes) std::cout << "  note: " << n << "\n";
  std::cout << (rep.passed() ? "PASS" : "FAIL") << "\n";
}

int run(Verb verb, const std::string& job_path, std::optional<std::uint64_t> seed, const std::string& out_dir) {
  JobConfig job = parse_job(job_path);
  if (seed) job.seed = *seed;
  if (!out_dir.empty()) job.out_dir = out_dir;
  require_mode(verb, job);

  if (verb == Verb::Synth) {
    const auto cfg = synthesize_job(job);
    std::filesystem::create_directories(job.out_dir);
    write_text(std::filesystem::path(job.out_dir) / "config.json", cfg.dump(2) + "\n");
    std::cout << cfg.dump(2) << "\n";
    return 0;
  }
  const bool geometry = verb != Verb::Verify && job.write_obj;
  const JobResult res = run_job(job, geometry);
  if (verb == Verb::Export) {
    write_artifacts(res, job.out_dir, false, true);
    std::cout << res.frames.size() << " frames written to " << (std::filesystem::path(job.out_dir) / "frames").string() << "\n";
    return 0;
  }
  write_artifacts(res, job.out_dir, true, geometry);
  std::cout << to_string(job.mode) << ": " << res.report.rows.size() << " residual rows\n";
  print_summary(res.report);
  return res.report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible cones and cylinders with planar sections"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string job_path, out_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--job", job_path, "JSON job file")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Seed for random sampling (overrides the job)");
  app.add_option("--out-dir", out_dir, "Output directory (overrides the job)");

  const std::pair<const char*, const char*> verbs[] = {
      {"synth", "Synthesize the configuration of a discrete job"},
      {"flex", "Sweep the motion of a discrete job, writing OBJ frames and the residual report"},
      {"verify", "Compute the residual report only"},
      {"smooth", "Integrate a smooth cone or cylinder job, writing OBJ frames and the residual report"},
      {"export", "Write the OBJ frames only"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : verbs) subs.push_back(app.add_subcommand(name, help));

  CLI11_PARSE(app, argc, argv);

  Verb verb = Verb::Synth;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) verb = static_cast<Verb>(i);
  try {
    return run(verb, job_path, seed, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
