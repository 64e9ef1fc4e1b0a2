#pragma once

// Job files, residual reports and OBJ export for the command line tool.

#include "conefold/bricard_builder.hpp"
#include "conefold/discrete_cylinder.hpp"
#include "conefold/smooth_cylinder.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <limits>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace conefold {

struct JobError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class JobMode { ConeDiscrete, CylDiscrete, ConeSmooth, CylSmooth };

inline std::string to_string(JobMode m) {
  switch (m) {
    case JobMode::ConeDiscrete: return "cone-discrete";
    case JobMode::CylDiscrete: return "cyl-discrete";
    case JobMode::ConeSmooth: return "cone-smooth";
    case JobMode::CylSmooth: return "cyl-smooth";
  }
  return "?";
}

inline bool is_smooth(JobMode m) { return m == JobMode::ConeSmooth || m == JobMode::CylSmooth; }

struct ProfileSpec {
  std::string kind = "constant";
  std::vector<double> params{1.0};
  double lo = 0.0, hi = 1.0;
};

struct JobConfig {
  JobMode mode = JobMode::ConeDiscrete;
  std::uint64_t seed = 0;

  // cone-discrete
  std::optional<BranchSelector> selector;
  FreeParams cone_free;
  bool random_free = false;
  int faces = 12;
  bool include_flat = true;

  // cyl-discrete
  CylinderFreeParams cyl_free;
  int root2 = 0, root3 = 0;
  double spacing = 1.0;
  bool normalized = false;
  double fold_lo = -1.0, fold_hi = 1.0;

  int samples = 20;

  // smooth modes
  ProfileSpec profile;
  double step = 1e-3;
  std::vector<double> I_values;
  bool I_relative = false;  // I_values are offsets above the feasible lower bound
  std::optional<double> expected_kappa;

  std::map<std::string, double> tolerances;
  std::string out_dir = "out";
  bool write_obj = true;
};

// ---------------------------------------------------------------------------------------------
// Parsing

namespace detail {

using json = nlohmann::json;

inline void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw JobError(where + ": expected an object");
  std::vector<std::string> bad;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) bad.push_back(it.key());
  if (!bad.empty()) {
    std::string msg = where + ": unknown keys:";
    for (const auto& k : bad) msg += " '" + k + "'";
    throw JobError(msg);
  }
}

template <class T>
T get_as(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw JobError(where + "." + key + ": " + e.what());
  }
}

template <class T>
void read_opt(const json& j, const std::string& key, T& out, const std::string& where) {
  if (j.contains(key)) out = get_as<T>(j, key, where);
}

inline std::map<std::string, double> default_tolerances(JobMode m) {
  switch (m) {
    case JobMode::ConeDiscrete:
      return {{"coplanarity", 1e-10}, {"closure", 1e-9},           {"mirror", 1e-10},      {"flat_state", 1e-9},
              {"planarity", 1e-8},    {"pencil_planarity", 1e-8},  {"pencil_membership", 1e-8},
              {"isometry", 1e-9}};
    case JobMode::CylDiscrete:
      return {{"coplanarity", 1e-10}, {"planarity", 1e-8}, {"isometry", 1e-9}};
    case JobMode::ConeSmooth:
      return {{"K_residual", 1e-6}, {"torsion", 1e-5}, {"plane_fit", 1e-6}, {"frame_drift", 1e-9}, {"kappa_error", 1e-8}};
    case JobMode::CylSmooth:
      return {{"cyl_residual", 1e-8}, {"torsion", 1e-6}, {"plane_fit", 1e-6}, {"frame_drift", 1e-9}, {"kappa_error", 1e-8}};
  }
  return {};
}

inline JobMode parse_mode(const std::string& s) {
  if (s == "cone-discrete") return JobMode::ConeDiscrete;
  if (s == "cyl-discrete") return JobMode::CylDiscrete;
  if (s == "cone-smooth") return JobMode::ConeSmooth;
  if (s == "cyl-smooth") return JobMode::CylSmooth;
  throw JobError("mode: expected cone-discrete, cyl-discrete, cone-smooth or cyl-smooth, got '" + s + "'");
}

}  // namespace detail

/// Validates a job given as parsed JSON. Keys that do not belong to the chosen mode are rejected.
inline JobConfig parse_job_json(const nlohmann::json& j) {
  using detail::check_keys;
  using detail::get_as;
  using detail::read_opt;
  if (!j.is_object()) throw JobError("job: expected a JSON object");
  if (!j.contains("mode")) throw JobError("job: missing required key 'mode'");
  JobConfig c;
  c.mode = detail::parse_mode(get_as<std::string>(j, "mode", "job"));

  std::set<std::string> allowed{"mode", "seed", "tolerances", "output"};
  switch (c.mode) {
    case JobMode::ConeDiscrete: allowed.insert({"selector", "free", "faces", "sweep"}); break;
    case JobMode::CylDiscrete: allowed.insert({"free", "faces", "sweep", "spacing", "normalized"}); break;
    default: allowed.insert({"profile", "grid", "I", "I_above_min", "expected_kappa"}); break;
  }
  check_keys(j, "job (mode " + to_string(c.mode) + ")", allowed);
  read_opt(j, "seed", c.seed, "job");
  if (c.mode == JobMode::CylDiscrete) c.faces = 6;

  if (c.mode == JobMode::ConeDiscrete) {
    if (!j.contains("selector")) throw JobError("job: cone-discrete requires 'selector' {u, v, coupling}");
    const auto& s = j.at("selector");
    check_keys(s, "selector", {"u", "v", "coupling"});
    for (const char* k : {"u", "v", "coupling"})
      if (!s.contains(k)) throw JobError(std::string("selector: missing required key '") + k + "'");
    BranchSelector sel;
    sel.u = get_as<int>(s, "u", "selector");
    sel.v = get_as<int>(s, "v", "selector");
    const auto mn = get_as<std::string>(s, "coupling", "selector");
    if (mn != "M" && mn != "N") throw JobError("selector.coupling: expected \"M\" or \"N\"");
    sel.mn = mn == "M" ? Coupling::M : Coupling::N;
    if ((sel.u != 1 && sel.u != 2) || (sel.v != 1 && sel.v != 2)) throw JobError("selector: u and v must be 1 or 2");
    c.selector = sel;
  }

  if (c.mode == JobMode::ConeDiscrete || c.mode == JobMode::CylDiscrete) {
    if (j.contains("free")) {
      const auto& f = j.at("free");
      if (f.is_string()) {
        if (f.get<std::string>() != "random") throw JobError("free: expected an object or the string \"random\"");
        c.random_free = true;
      } else if (c.mode == JobMode::ConeDiscrete) {
        check_keys(f, "free", {"m", "s1", "s3", "t1"});
        read_opt(f, "m", c.cone_free.m, "free");
        read_opt(f, "s1", c.cone_free.s1, "free");
        read_opt(f, "s3", c.cone_free.s3, "free");
        read_opt(f, "t1", c.cone_free.t1, "free");
      } else {
        check_keys(f, "free", {"s1", "s2", "s3", "t1", "root2", "root3"});
        read_opt(f, "s1", c.cyl_free.s1, "free");
        read_opt(f, "s2", c.cyl_free.s2, "free");
        read_opt(f, "s3", c.cyl_free.s3, "free");
        read_opt(f, "t1", c.cyl_free.t1, "free");
        read_opt(f, "root2", c.root2, "free");
        read_opt(f, "root3", c.root3, "free");
        if (c.root2 < 0 || c.root2 > 1 || c.root3 < 0 || c.root3 > 1) throw JobError("free: root2 and root3 must be 0 or 1");
      }
    }
    read_opt(j, "faces", c.faces, "job");
    if (c.mode == JobMode::CylDiscrete) {
      read_opt(j, "spacing", c.spacing, "job");
      read_opt(j, "normalized", c.normalized, "job");
      if (!(c.spacing > 0.0)) throw JobError("spacing: must be positive");
      if (c.faces < 3) throw JobError("faces: a cylinder strip needs at least 3 faces");
    } else if (c.faces < 3) {
      throw JobError("faces: a cone strip needs at least 3 faces");
    }
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      if (c.mode == JobMode::ConeDiscrete) {
        check_keys(s, "sweep", {"samples", "include_flat"});
        read_opt(s, "include_flat", c.include_flat, "sweep");
      } else {
        check_keys(s, "sweep", {"samples", "range"});
        if (s.contains("range")) {
          auto r = get_as<std::vector<double>>(s, "range", "sweep");
          if (r.size() != 2 || !(r[0] < r[1]) || r[0] <= -kPi || r[1] >= kPi)
            throw JobError("sweep.range: expected [lo, hi] with -π < lo < hi < π");
          c.fold_lo = r[0];
          c.fold_hi = r[1];
        }
      }
      read_opt(s, "samples", c.samples, "sweep");
    }
    if (c.samples < 1) throw JobError("sweep.samples: must be at least 1");
  }

  if (is_smooth(c.mode)) {
    if (!j.contains("profile")) throw JobError("job: " + to_string(c.mode) + " requires 'profile'");
    const auto& p = j.at("profile");
    check_keys(p, "profile", {"kind", "params", "domain"});
    for (const char* k : {"kind", "domain"})
      if (!p.contains(k)) throw JobError(std::string("profile: missing required key '") + k + "'");
    c.profile.kind = get_as<std::string>(p, "kind", "profile");
    read_opt(p, "params", c.profile.params, "profile");
    auto d = get_as<std::vector<double>>(p, "domain", "profile");
    if (d.size() != 2 || !(d[0] < d[1])) throw JobError("profile.domain: expected [lo, hi] with lo < hi");
    c.profile.lo = d[0];
    c.profile.hi = d[1];
    if (j.contains("grid")) {
      check_keys(j.at("grid"), "grid", {"step"});
      read_opt(j.at("grid"), "step", c.step, "grid");
    }
    if (!(c.step > 0.0) || c.step > (c.profile.hi - c.profile.lo) / 6.0) throw JobError("grid.step: must be positive and give at least 7 nodes");
    const bool abs_I = j.contains("I"), rel_I = j.contains("I_above_min");
    if (abs_I == rel_I) throw JobError("job: give exactly one of 'I' and 'I_above_min'");
    if (rel_I && c.mode == JobMode::CylSmooth) throw JobError("I_above_min: only available for cone-smooth");
    c.I_values = get_as<std::vector<double>>(j, abs_I ? "I" : "I_above_min", "job");
    c.I_relative = rel_I;
    if (c.I_values.empty()) throw JobError("job: I values must not be empty");
    if (j.contains("expected_kappa")) c.expected_kappa = get_as<double>(j, "expected_kappa", "job");
  }

  c.tolerances = detail::default_tolerances(c.mode);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    std::set<std::string> names;
    for (const auto& [k, v] : c.tolerances) names.insert(k);
    check_keys(t, "tolerances", names);
    for (auto it = t.begin(); it != t.end(); ++it) {
      const double v = get_as<double>(t, it.key(), "tolerances");
      if (!(v > 0.0)) throw JobError("tolerances." + it.key() + ": must be positive");
      c.tolerances[it.key()] = v;
    }
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    check_keys(o, "output", {"dir", "obj"});
    read_opt(o, "dir", c.out_dir, "output");
    read_opt(o, "obj", c.write_obj, "output");
  }
  return c;
}

inline JobConfig parse_job(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw JobError("cannot open job file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw JobError(path.string() + ": " + e.what());
  }
  return parse_job_json(j);
}

/// The profile named in a job.
inline ProfileFunction make_profile(const ProfileSpec& p) {
  auto need = [&p](std::size_t n) {
    if (p.params.size() != n)
      throw JobError("profile." + p.kind + ": expected " + std::to_string(n) + " params, got " + std::to_string(p.params.size()));
  };
  const auto& a = p.params;
  if (p.kind == "constant") {
    need(1);
    return profiles::constant(a[0], p.lo, p.hi);
  }
  if (p.kind == "polynomial") {
    if (a.empty()) throw JobError("profile.polynomial: needs at least one coefficient");
    return profiles::polynomial(a, p.lo, p.hi);
  }
  if (p.kind == "trig") {
    need(4);
    return profiles::trig(a[0], a[1], a[2], a[3], p.lo, p.hi);
  }
  if (p.kind == "exponential") {
    need(3);
    return profiles::exponential(a[0], a[1], a[2], p.lo, p.hi);
  }
  if (p.kind == "reciprocal_trig") {
    need(4);
    return profiles::reciprocal_trig(a[0], a[1], a[2], a[3], p.lo, p.hi);
  }
  throw JobError("profile.kind: unknown kind '" + p.kind + "' (constant, polynomial, trig, exponential, reciprocal_trig)");
}

// ---------------------------------------------------------------------------------------------
// Formatting and export

/// %.17g, which round-trips doubles and is independent of the locale's digit grouping.
inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::string obj_text(const Mesh& m) {
  std::string s;
  for (const auto& v : m.vertices) s += "v " + fmt(v.x()) + " " + fmt(v.y()) + " " + fmt(v.z()) + "\n";
  for (const auto& f : m.faces) {
    s += "f";
    for (int i : f) s += " " + std::to_string(i + 1);
    s += "\n";
  }
  return s;
}

inline void export_obj(const Mesh& m, const std::filesystem::path& path) { write_text(path, obj_text(m)); }

/// frame_000.obj, frame_001.obj, ... in `dir`. Returns the written paths.
inline std::vector<std::filesystem::path> export_obj_sequence(const std::vector<Mesh>& frames, const std::filesystem::path& dir,
                                                              const std::string& prefix = "frame") {
  const int width = std::max<int>(3, static_cast<int>(std::to_string(frames.empty() ? 0 : frames.size() - 1).size()));
  std::vector<std::filesystem::path> out;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::string num = std::to_string(i);
    num.insert(0, static_cast<std::size_t>(std::max(0, width - static_cast<int>(num.size()))), '0');
    out.push_back(dir / (prefix + "_" + num + ".obj"));
    export_obj(frames[i], out.back());
  }
  return out;
}

/// Reads the `v` and `f` lines of an OBJ file (f entries may carry /vt/vn suffixes).
inline Mesh read_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Mesh m;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      std::string x, y, z;
      ls >> x >> y >> z;
      m.vertices.emplace_back(std::strtod(x.c_str(), nullptr), std::strtod(y.c_str(), nullptr), std::strtod(z.c_str(), nullptr));
    } else if (tag == "f") {
      std::vector<int> f;
      std::string tok;
      while (ls >> tok) f.push_back(std::stoi(tok.substr(0, tok.find('/'))) - 1);
      m.faces.push_back(std::move(f));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------------------------
// Reports

struct ResidualRow {
  double parameter = 0.0;
  std::string name;
  double value = 0.0;
  std::string tolerance;  // key into the tolerances; empty for informational rows
};

struct ResidualReport {
  std::string parameter_name = "parameter";
  std::vector<ResidualRow> rows;
  std::map<std::string, double> tolerances;
  std::vector<std::string> notes;

  void add(double parameter, std::string name, double value, std::string tol = {}) {
    rows.push_back({parameter, std::move(name), value, std::move(tol)});
  }
  void sort() {
    std::stable_sort(rows.begin(), rows.end(), [](const ResidualRow& a, const ResidualRow& b) { return a.parameter < b.parameter; });
  }
  bool row_passes(const ResidualRow& r) const {
    if (r.tolerance.empty()) return true;
    return r.value <= tolerances.at(r.tolerance);  // NaN fails
  }
  /// Largest value per residual name.
  std::map<std::string, double> maxima() const {
    std::map<std::string, double> m;
    for (const auto& r : rows) {
      auto [it, fresh] = m.emplace(r.name, r.value);
      if (!fresh && !(it->second >= r.value)) it->second = r.value;
    }
    return m;
  }
  bool passed() const {
    return std::all_of(rows.begin(), rows.end(), [this](const ResidualRow& r) { return row_passes(r); });
  }

  std::string csv() const {
    std::string s = parameter_name + ",residual,value,threshold,pass\n";
    for (const auto& r : rows) {
      s += fmt(r.parameter) + "," + r.name + "," + fmt(r.value) + ",";
      s += r.tolerance.empty() ? std::string() : fmt(tolerances.at(r.tolerance));
      s += row_passes(r) ? ",1\n" : ",0\n";
    }
    return s;
  }
  std::string summary_csv() const {
    std::map<std::string, std::string> tol_of;
    for (const auto& r : rows) tol_of[r.name] = r.tolerance;
    std::map<std::string, bool> ok;
    for (const auto& r : rows) ok.emplace(r.name, true).first->second &= row_passes(r);
    std::string s = "residual,max,threshold,pass\n";
    for (const auto& [name, mx] : maxima()) {
      const auto& t = tol_of[name];
      s += name + "," + fmt(mx) + "," + (t.empty() ? std::string() : fmt(tolerances.at(t))) + (ok[name] ? ",1\n" : ",0\n");
    }
    s += std::string("all,,,") + (passed() ? "1" : "0") + "\n";
    return s;
  }
};

// ---------------------------------------------------------------------------------------------
// Running jobs

struct JobResult {
  ResidualReport report;
  std::vector<Mesh> frames;
  nlohmann::json config;  // synthesized parameters
};

namespace detail {

template <class F>
auto in_module(const char* module, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const JobError&) {
    throw;
  } catch (const std::exception& e) {
    throw JobError(std::string(module) + ": " + e.what());
  }
}

inline ConfigD job_cone_config(const JobConfig& job) {
  const BranchSelector sel = *job.selector;
  if (!job.random_free) return in_module("discrete_cone", [&] { return synthesize_config(sel, job.cone_free); });
  std::mt19937_64 gen(job.seed);
  std::uniform_real_distribution<double> M(0.2, 1.5), W(-2.0, 2.0);
  std::string last;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    FreeParams p{M(gen), W(gen), W(gen), W(gen)};
    try {
      return synthesize_config(sel, p);
    } catch (const std::exception& e) {
      last = e.what();
    }
  }
  throw JobError("discrete_cone: no feasible random configuration for branch " + sel.label() + " (last: " + last + ")");
}

inline CylinderConfig job_cyl_config(const JobConfig& job) {
  auto make = [&job](const CylinderFreeParams& p) {
    if (job.normalized) return normalized_cylinder(p.s1, p.s2, p.s3, job.spacing);
    return synthesize_cylinder(p, job.root2, job.root3, job.spacing);
  };
  if (!job.random_free) return in_module("discrete_cylinder", [&] { return make(job.cyl_free); });
  std::mt19937_64 gen(job.seed);
  std::uniform_real_distribution<double> W(-3.0, 3.0);
  std::string last;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CylinderFreeParams p{W(gen), W(gen), W(gen), W(gen)};
    try {
      return make(p);
    } catch (const std::exception& e) {
      last = e.what();
    }
  }
  throw JobError("discrete_cylinder: no feasible random configuration (last: " + last + ")");
}

inline nlohmann::json cone_json(const ConfigD& c, const BranchSelector& sel) {
  return {{"selector", sel.label()}, {"m", c.m}, {"s1", c.s1}, {"s2", c.s2}, {"s3", c.s3}, {"t1", c.t1}, {"t2", c.t2}, {"t3", c.t3}};
}

inline nlohmann::json cyl_json(const CylinderConfig& c) {
  return {{"s1", c.s1}, {"s2", c.s2}, {"s3", c.s3}, {"t1", c.t1}, {"t2", c.t2}, {"t3", c.t3}, {"spacing", c.spacing},
          {"normalized", c.normalized_beta}};
}

inline double fold_parameter(const FoldValue& f) { return f.infinite ? std::numeric_limits<double>::infinity() : f.tan; }

inline JobResult run_cone_discrete(const JobConfig& job, bool geometry) {
  JobResult res;
  const BranchSelector sel = *job.selector;
  const ConfigD c = job_cone_config(job);
  res.config = cone_json(c, sel);
  auto& rep = res.report;
  rep.parameter_name = "d1";
  const ConeStrip base = in_module("bricard_builder", [&] { return build_strip(c, sel, job.faces, 0.35); });
  const auto samples = sweep_samples(job.samples, job.include_flat);
  const auto frames = in_module("bricard_builder", [&] { return flex_sweep(base, sel, samples); });
  const auto flats = flat_states(c, sel);
  for (const auto& f : frames) {
    const double p = fold_parameter(f.fold.d1);
    if (f.skipped) {
      rep.notes.push_back("d1 = " + fmt(p) + ": " + f.note);
      continue;
    }
    rep.add(p, "D1", std::abs(eval_D1(c, f.fold)), "coplanarity");
    rep.add(p, "D2", std::abs(eval_D2(c, f.fold)), "coplanarity");
    const auto& r = f.residuals;
    rep.add(p, "alpha_planarity", r.alpha_planarity, "planarity");
    rep.add(p, "beta_planarity", r.beta_planarity, "planarity");
    rep.add(p, "pencil_planarity", r.pencil_planarity, "pencil_planarity");
    rep.add(p, "pencil_membership", r.pencil_membership, "pencil_membership");
    rep.add(p, "edge_length", r.edge_length, "isometry");
    rep.add(p, "opening_angle", r.opening_angle, "isometry");
    if (job.faces >= 8) {
      const auto ap = verify_antiparallelogram(f.strip);
      rep.add(p, "closure", std::max({ap.ruling_period, ap.section_period, ap.side_pairing, ap.germ_faces}), "closure");
      if (ap.mirror_defined) rep.add(p, "mirror", ap.mirror, "mirror");
    }
    for (const auto& fs : flats)
      if (fs.d1.infinite == f.fold.d1.infinite && (fs.d1.infinite || fs.d1.tan == f.fold.d1.tan))
        rep.add(p, "flat_state", r.flatness, "flat_state");
    if (geometry) res.frames.push_back(f.mesh);
  }
  return res;
}

inline JobResult run_cyl_discrete(const JobConfig& job, bool geometry) {
  JobResult res;
  const CylinderConfig c = job_cyl_config(job);
  res.config = cyl_json(c);
  auto& rep = res.report;
  rep.parameter_name = "d2";
  for (int i = 0; i < job.samples; ++i) {
    const double ang = job.samples == 1 ? 0.5 * (job.fold_lo + job.fold_hi)
                                        : job.fold_lo + (job.fold_hi - job.fold_lo) * i / (job.samples - 1);
    const double d2 = std::tan(0.5 * ang);
    CylinderStrip s;
    try {
      s = build_prism_strip(c, job.faces, d2);
    } catch (const std::domain_error& e) {
      rep.notes.push_back("d2 = " + fmt(d2) + ": " + e.what());
      continue;
    }
    const auto r = cylinder_residuals(s);
    rep.add(d2, "coplanarity", r.coplanarity, "coplanarity");
    rep.add(d2, "alpha_planarity", r.alpha_planarity, "planarity");
    rep.add(d2, "beta_planarity", r.beta_planarity, "planarity");
    rep.add(d2, "edge_length", r.edge_length, "isometry");
    if (geometry) res.frames.push_back(cylinder_mesh(s));
  }
  return res;
}

inline double node_drift(const std::vector<Vec3>& a, const std::vector<Vec3>& b, const std::vector<Vec3>& c) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Mat3 m;
    m.col(0) = a[i];
    m.col(1) = b[i];
    m.col(2) = c[i];
    d = std::max(d, (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff());
  }
  return d;
}

inline double kappa_error(const std::vector<double>& k, double expected) {
  double e = 0.0;
  for (double v : k) e = std::max(e, std::abs(v - expected));
  return e;
}

inline std::size_t mesh_stride(std::size_t n) { return std::max<std::size_t>(1, n / 200); }

inline JobResult run_cone_smooth(const JobConfig& job, bool geometry) {
  JobResult res;
  const ProfileFunction phi = make_profile(job.profile);
  const auto grid = grid_with_step(phi.lo(), phi.hi(), job.step);
  const double length = phi.hi() - phi.lo();
  auto& rep = res.report;
  rep.parameter_name = "I";
  const double lower = job.I_relative ? in_module("smooth_cone", [&] { return feasible_I_lower_bound(phi, grid); }) : 0.0;
  res.config = {{"profile", phi.name()}, {"grid_nodes", grid.size()}, {"feasible_I_lower_bound", lower}};
  for (double I0 : job.I_values) {
    const double I = I0 + lower;
    const auto k = in_module("smooth_cone", [&] { return kappa_from_profile(phi, I, grid); });
    const auto kp = fd_derivative(grid, k.values());
    const auto frame = darboux_integrate(k, grid);
    const auto p = cone_curve(frame, phi);
    rep.add(I, "kappa_min", *std::min_element(k.values().begin(), k.values().end()));
    rep.add(I, "kappa_max", *std::max_element(k.values().begin(), k.values().end()));
    if (job.expected_kappa) rep.add(I, "kappa_error", kappa_error(k.values(), *job.expected_kappa), "kappa_error");
    rep.add(I, "K_residual", K_residual(phi, k.values(), kp, grid), "K_residual");
    rep.add(I, "torsion", in_module("smooth_cone", [&] { return torsion_residual(p, grid); }), "torsion");
    rep.add(I, "plane_fit", planarity_residual(p), "plane_fit");
    rep.add(I, "frame_drift", frame.orthonormality_drift() / std::max(1.0, length), "frame_drift");
    for (const auto& label : degenerate_solutions(phi, k, grid)) rep.notes.push_back("I = " + fmt(I) + ": " + label);
    if (geometry) res.frames.push_back(cone_mesh(frame, 2.0, mesh_stride(grid.size())));
  }
  return res;
}

inline JobResult run_cyl_smooth(const JobConfig& job, bool geometry) {
  JobResult res;
  const ProfileFunction phi = make_profile(job.profile);
  const auto grid = grid_with_step(phi.lo(), phi.hi(), job.step);
  const double length = phi.hi() - phi.lo();
  auto& rep = res.report;
  rep.parameter_name = "I";
  res.config = {{"profile", phi.name()}, {"grid_nodes", grid.size()}};
  for (double I : job.I_values) {
    const auto k = in_module("smooth_cylinder", [&] { return kappa_planar(phi, I, grid); });
    if (k.trimmed_front + k.trimmed_back > 0)
      rep.notes.push_back("I = " + fmt(I) + ": trimmed " + std::to_string(k.trimmed_front) + " + " + std::to_string(k.trimmed_back) +
                          " end nodes where I - φ'² ≤ 1e-6");
    const auto frame = planar_frame_integrate(k.field, k.grid);
    const auto p = cylinder_curve(frame, phi);
    const auto& kv = k.field.values();
    rep.add(I, "kappa_min", *std::min_element(kv.begin(), kv.end()));
    rep.add(I, "kappa_max", *std::max_element(kv.begin(), kv.end()));
    if (job.expected_kappa) rep.add(I, "kappa_error", kappa_error(kv, *job.expected_kappa), "kappa_error");
    rep.add(I, "cyl_residual", cyl_residual(phi, k.field, k.grid), "cyl_residual");
    double tors = std::numeric_limits<double>::quiet_NaN();
    try {
      tors = torsion_residual(p, k.grid);
    } catch (const std::domain_error& e) {
      rep.notes.push_back("I = " + fmt(I) + ": " + e.what());
    }
    if (!std::isnan(tors)) rep.add(I, "torsion", tors, "torsion");
    rep.add(I, "plane_fit", planarity_residual(p), "plane_fit");
    std::vector<Vec3> e3(frame.e1.size(), frame.e3);
    rep.add(I, "frame_drift", node_drift(frame.e1, frame.e2, e3) / std::max(1.0, length), "frame_drift");
    if (geometry) res.frames.push_back(cylinder_surface_mesh(frame, -1.0, 1.0, mesh_stride(k.grid.size())));
  }
  return res;
}

}  // namespace detail

/// Synthesized parameters of a discrete job, without running the motion.
inline nlohmann::json synthesize_job(const JobConfig& job) {
  if (job.mode == JobMode::ConeDiscrete) return detail::cone_json(detail::job_cone_config(job), *job.selector);
  if (job.mode == JobMode::CylDiscrete) return detail::cyl_json(detail::job_cyl_config(job));
  throw JobError("synthesis applies to discrete jobs only, not " + to_string(job.mode));
}

/// Runs the pipelines of the job's mode. Geometry is collected only if `geometry` is set.
inline JobResult run_job(const JobConfig& job, bool geometry = true) {
  JobResult res;
  switch (job.mode) {
    case JobMode::ConeDiscrete: res = detail::run_cone_discrete(job, geometry); break;
    case JobMode::CylDiscrete: res = detail::run_cyl_discrete(job, geometry); break;
    case JobMode::ConeSmooth: res = detail::run_cone_smooth(job, geometry); break;
    case JobMode::CylSmooth: res = detail::run_cyl_smooth(job, geometry); break;
  }
  res.report.tolerances = job.tolerances;
  res.report.sort();
  return res;
}

/// report.csv, summary.csv, config.json, notes.txt (if any) and frames/frame_NNN.obj.
inline void write_artifacts(const JobResult& r, const std::filesystem::path& dir, bool report, bool obj) {
  std::filesystem::create_directories(dir);
  if (report) {
    write_text(dir / "report.csv", r.report.csv());
    write_text(dir / "summary.csv", r.report.summary_csv());
    write_text(dir / "config.json", r.config.dump(2) + "\n");
    if (!r.report.notes.empty()) {
      std::string s;
      for (const auto& n : r.report.notes) s += n + "\n";
      write_text(dir / "notes.txt", s);
    }
  }
  if (obj && !r.frames.empty()) export_obj_sequence(r.frames, dir / "frames");
}

}  // namespace conefold
