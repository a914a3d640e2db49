#include "avector/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "avector/errors.hpp"
#include "avector/io.hpp"
#include "avector/presets.hpp"
#include "avector/spectral.hpp"
#include "avector/toml_lite.hpp"

namespace avec
{

std::string version_string() { return "0.1.0"; }

namespace
{

using toml::Value;

// Typed access to one table that records every key it hands out.
class Section
{
public:
  Section(const toml::Table *table, std::string name, std::set<std::string> &used)
      : table_(table), name_(std::move(name)), used_(used)
  {
  }

  bool present() const { return table_ != nullptr; }

  const Value *find(const std::string &key) const
  {
    if (!table_)
    {
      return nullptr;
    }
    auto it = table_->find(key);
    if (it == table_->end())
    {
      return nullptr;
    }
    used_.insert(qualified(key));
    return &it->second;
  }

  std::string qualified(const std::string &key) const
  {
    return name_.empty() ? key : name_ + "." + key;
  }

  double number(const std::string &key, double def) const
  {
    const Value *v = find(key);
    if (!v)
    {
      return def;
    }
    if (!v->is_number())
    {
      throw ConfigError(qualified(key) + " must be a number, got " + v->type_name());
    }
    return v->as_number();
  }

  long long integer(const std::string &key, long long def) const
  {
    const Value *v = find(key);
    if (!v)
    {
      return def;
    }
    if (v->type != Value::Type::integer)
    {
      throw ConfigError(qualified(key) + " must be an integer, got " + v->type_name());
    }
    return v->integer;
  }

  bool boolean(const std::string &key, bool def) const
  {
    const Value *v = find(key);
    if (!v)
    {
      return def;
    }
    if (v->type != Value::Type::boolean)
    {
      throw ConfigError(qualified(key) + " must be true or false");
    }
    return v->boolean;
  }

  std::string string(const std::string &key, const std::string &def) const
  {
    const Value *v = find(key);
    if (!v)
    {
      return def;
    }
    if (v->type != Value::Type::string)
    {
      throw ConfigError(qualified(key) + " must be a string, got " + v->type_name());
    }
    return v->str;
  }

  std::vector<double> numbers(const std::string &key, const std::vector<double> &def) const
  {
    const Value *v = find(key);
    if (!v)
    {
      return def;
    }
    if (v->type != Value::Type::array)
    {
      throw ConfigError(qualified(key) + " must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto &e : *v->array)
    {
      if (!e.is_number())
      {
        throw ConfigError(qualified(key) + " must be an array of numbers");
      }
      out.push_back(e.as_number());
    }
    return out;
  }

  std::vector<long long> integers(const std::string &key, const std::vector<long long> &def) const
  {
    const Value *v = find(key);
    if (!v)
    {
      return def;
    }
    if (v->type != Value::Type::array)
    {
      throw ConfigError(qualified(key) + " must be an array of integers");
    }
    std::vector<long long> out;
    for (const auto &e : *v->array)
    {
      if (e.type != Value::Type::integer)
      {
        throw ConfigError(qualified(key) + " must be an array of integers");
      }
      out.push_back(e.integer);
    }
    return out;
  }

  const toml::Table *table() const { return table_; }

private:
  const toml::Table *table_;
  std::string name_;
  std::set<std::string> &used_;
};

class Document
{
public:
  explicit Document(const std::string &text) : root_(toml::parse(text)) {}

  Section root() { return Section(&root_, "", used_); }

  Section section(const std::string &name)
  {
    auto it = root_.find(name);
    if (it == root_.end())
    {
      return Section(nullptr, name, used_);
    }
    if (it->second.type != Value::Type::table)
    {
      throw ConfigError("'" + name + "' must be a section");
    }
    used_.insert(name);
    return Section(it->second.table.get(), name, used_);
  }

  void finish() const
  {
    std::vector<std::string> unknown;
    for (const auto &[k, v] : root_)
    {
      if (v.type == Value::Type::table)
      {
        if (!used_.count(k))
        {
          unknown.push_back(k);
          continue;
        }
        for (const auto &[kk, vv] : *v.table)
        {
          if (!used_.count(k + "." + kk))
          {
            unknown.push_back(k + "." + kk);
          }
        }
      }
      else if (!used_.count(k))
      {
        unknown.push_back(k);
      }
    }
    if (!unknown.empty())
    {
      std::string msg = "unknown config keys:";
      for (const auto &u : unknown)
      {
        msg += " " + u;
      }
      throw ConfigError(msg);
    }
  }

private:
  toml::Table root_;
  std::set<std::string> used_;
};

Document load(const std::string &text)
{
  try
  {
    return Document(text);
  }
  catch (const FormatError &e)
  {
    throw ConfigError(e.what());
  }
}

MultiplierSpec read_multiplier(Document &doc)
{
  Section m = doc.section("multiplier");
  if (!m.present())
  {
    return MultiplierSpec::power(2.0);
  }
  const std::string kind = m.string("kind", "power");
  if (kind == "power")
  {
    return MultiplierSpec::power(m.number("a", 2.0));
  }
  if (kind == "power_log")
  {
    return MultiplierSpec::power_log(m.number("a", 1.5), m.number("alpha1", 1.0));
  }
  if (kind == "power_loglog")
  {
    return MultiplierSpec::power_loglog(m.number("a", 1.5), m.number("alpha1", 1.0),
                                        m.number("alpha2", 1.0));
  }
  if (kind == "tabulated")
  {
    const Value *t = m.find("table");
    if (!t || t->type != Value::Type::array)
    {
      throw ConfigError("multiplier.table must be an array of [r, gamma] pairs");
    }
    std::vector<std::pair<double, double>> samples;
    for (const auto &row : *t->array)
    {
      if (row.type != Value::Type::array || row.array->size() != 2 || !(*row.array)[0].is_number() ||
          !(*row.array)[1].is_number())
      {
        throw ConfigError("multiplier.table must be an array of [r, gamma] pairs");
      }
      samples.emplace_back((*row.array)[0].as_number(), (*row.array)[1].as_number());
    }
    try
    {
      return MultiplierSpec::tabulated(std::move(samples));
    }
    catch (const DomainError &e)
    {
      throw ConfigError(std::string("multiplier.table: ") + e.what());
    }
  }
  throw ConfigError("multiplier.kind must be power, power_log, power_loglog or tabulated, got '" +
                    kind + "'");
}

Grid read_grid(Document &doc, bool planar, std::size_t def)
{
  Section g = doc.section("grid");
  std::vector<long long> dims;
  const long long n = g.integer("n", 0);
  dims = g.integers("dims", {});
  if (n != 0 && !dims.empty())
  {
    throw ConfigError("grid: give either n or dims, not both");
  }
  if (dims.empty())
  {
    const long long m = n != 0 ? n : static_cast<long long>(def);
    dims = planar ? std::vector<long long>{m, m} : std::vector<long long>{m, m, m};
  }
  if (dims.size() != (planar ? 2u : 3u))
  {
    throw ConfigError(std::string("grid.dims must have ") + (planar ? "2" : "3") + " entries");
  }
  for (long long d : dims)
  {
    if (d < 4 || d % 2 != 0)
    {
      throw ConfigError("grid sizes must be even and >= 4, got " + std::to_string(d));
    }
  }
  if (planar)
  {
    return Grid::planar(static_cast<std::size_t>(dims[0]), static_cast<std::size_t>(dims[1]));
  }
  return Grid(static_cast<std::size_t>(dims[0]), static_cast<std::size_t>(dims[1]),
              static_cast<std::size_t>(dims[2]));
}

InitialSpec read_initial(Document &doc, const std::string &default_preset)
{
  Section s = doc.section("initial");
  InitialSpec init;
  init.preset = s.string("preset", default_preset);
  init.A = s.number("A", init.A);
  init.B = s.number("B", init.B);
  init.C = s.number("C", init.C);
  const auto k = s.integers("k", {init.k[0], init.k[1], init.k[2]});
  if (k.size() < 2 || k.size() > 3)
  {
    throw ConfigError("initial.k must have 2 or 3 entries");
  }
  init.k = {static_cast<int>(k[0]), static_cast<int>(k[1]),
            k.size() == 3 ? static_cast<int>(k[2]) : 0};
  init.axis = static_cast<int>(s.integer("axis", init.axis));
  init.amplitude = s.number("amplitude", init.amplitude);
  init.decay = s.number("decay", init.decay);
  init.band = static_cast<int>(s.integer("band", init.band));
  init.rms = s.number("rms", init.rms);
  init.j_rms = s.number("j_rms", init.j_rms);
  init.path = s.string("path", init.path);
  static const std::set<std::string> presets{"abc", "single_mode", "random", "snapshot"};
  if (!presets.count(init.preset))
  {
    throw ConfigError("initial.preset must be abc, single_mode, random or snapshot, got '" +
                      init.preset + "'");
  }
  if (init.preset == "snapshot" && init.path.empty())
  {
    throw ConfigError("initial.path is required for preset = \"snapshot\"");
  }
  if (init.rms < 0.0 || init.j_rms < 0.0)
  {
    throw ConfigError("initial.rms and initial.j_rms must be >= 0");
  }
  return init;
}

std::uint64_t read_seed(Document &doc)
{
  const long long seed = doc.root().integer("seed", 1);
  if (seed < 0)
  {
    throw ConfigError("seed must be >= 0");
  }
  return static_cast<std::uint64_t>(seed);
}

std::string read_mode(Document &doc)
{
  return doc.root().string("mode", "run3d");
}

Run3dConfig read_run3d(Document &doc)
{
  Run3dConfig c;
  c.seed = read_seed(doc);
  c.sim.grid = read_grid(doc, false, 32);
  c.sim.multiplier = read_multiplier(doc);
  Section time = doc.section("time");
  c.sim.dt = time.number("dt", c.sim.dt);
  c.sim.t_end = time.number("t_end", c.sim.t_end);
  Section diss = doc.section("dissipation");
  if (diss.present())
  {
    Dissipation d;
    d.nu = diss.number("nu", d.nu);
    d.b = diss.number("b", d.b);
    c.sim.dissipation = d;
  }
  Section out = doc.section("output");
  c.sim.output_every = static_cast<int>(out.integer("every", c.sim.output_every));
  c.sim.snapshot_every = static_cast<int>(out.integer("snapshot_every", c.sim.snapshot_every));
  c.sim.hs_orders = out.numbers("hs", c.sim.hs_orders);
  c.sim.y1_ceiling = out.number("y1_ceiling", c.sim.y1_ceiling);
  Section solver = doc.section("solver");
  c.sim.dealias = solver.boolean("dealias", c.sim.dealias);
  c.sim.project_every_step = solver.boolean("project_every_step", c.sim.project_every_step);
  c.initial = read_initial(doc, "abc");
  c.warnings = validate(c.sim);
  return c;
}

Run2dConfig read_run2d(Document &doc)
{
  Run2dConfig c;
  c.seed = read_seed(doc);
  c.sim.grid = read_grid(doc, true, 64);
  c.sim.multiplier = read_multiplier(doc);
  Section time = doc.section("time");
  c.sim.dt = time.number("dt", c.sim.dt);
  c.sim.t_end = time.number("t_end", c.sim.t_end);
  Section out = doc.section("output");
  c.sim.output_every = static_cast<int>(out.integer("every", c.sim.output_every));
  c.sim.snapshot_every = static_cast<int>(out.integer("snapshot_every", c.sim.snapshot_every));
  Section solver = doc.section("solver");
  c.sim.dealias = solver.boolean("dealias", c.sim.dealias);
  c.initial = read_initial(doc, "random");
  if (c.initial.preset == "abc")
  {
    throw ConfigError("initial.preset = \"abc\" is three-dimensional; use single_mode, random "
                      "or snapshot for run2d");
  }
  if (c.sim.snapshot_every < 0)
  {
    throw ConfigError("output.snapshot_every must be >= 0");
  }
  c.warnings = validate(c.sim);
  return c;
}

VerifyConfig read_verify(Document &doc)
{
  VerifyConfig c;
  c.ensemble.seed = read_seed(doc);
  Section v = doc.section("verify");
  c.estimate = v.string("estimate", c.estimate);
  const std::string spec = v.string("spec", "");
  if (!spec.empty())
  {
    c.spec = MultiplierSpec::parse(spec);
  }
  else if (doc.section("multiplier").present())
  {
    c.spec = read_multiplier(doc);
  }
  c.a = v.number("a", c.a);
  c.s = v.number("s", c.s);
  const long long samples = v.integer("samples", static_cast<long long>(c.ensemble.samples));
  if (samples < 1)
  {
    throw ConfigError("verify.samples must be >= 1");
  }
  c.ensemble.samples = static_cast<std::size_t>(samples);
  const auto res = v.integers("resolutions", {8, 16});
  c.ensemble.resolutions.clear();
  for (long long r : res)
  {
    if (r < 4 || r % 2 != 0)
    {
      throw ConfigError("verify.resolutions must be even and >= 4");
    }
    c.ensemble.resolutions.push_back(static_cast<std::size_t>(r));
  }
  c.ensemble.decay = v.number("decay", c.ensemble.decay);
  static const std::set<std::string> names{"comm1", "comm3", "comm4", "embedding", "log_sobolev"};
  if (!names.count(c.estimate))
  {
    throw ConfigError("verify.estimate must be comm1, comm3, comm4, embedding or log_sobolev");
  }
  c.warnings = c.spec.warnings();
  return c;
}

AdvectConfig read_advect(Document &doc)
{
  AdvectConfig c;
  c.run = read_run3d(doc);
  Section a = doc.section("advect");
  const long long n = a.integer("seeds", static_cast<long long>(c.seeds));
  if (n < 1)
  {
    throw ConfigError("advect.seeds must be >= 1");
  }
  c.seeds = static_cast<std::size_t>(n);
  c.seeds_path = a.string("seeds_path", c.seeds_path);
  c.curve_path = a.string("curve_path", c.curve_path);
  c.t_end = a.number("t_end", c.t_end);
  c.dt = a.number("dt", c.dt);
  c.sampling.kind = parse_interpolation(a.string("interpolation", to_string(c.sampling.kind)));
  const long long refine = a.integer("refine", 1);
  if (refine < 1)
  {
    throw ConfigError("advect.refine must be >= 1");
  }
  c.sampling.refine = static_cast<std::size_t>(refine);
  c.steady = a.boolean("steady", c.steady);
  if (!(c.dt > 0.0) || !(c.t_end >= 0.0))
  {
    throw ConfigError("advect.dt must be positive and advect.t_end non-negative");
  }
  return c;
}

}  // namespace

VectorField make_initial(const InitialSpec &init, const Grid &grid, std::uint64_t seed)
{
  if (init.preset == "abc")
  {
    return abc_field(grid, init.A, init.B, init.C);
  }
  if (init.preset == "single_mode")
  {
    return single_mode(grid, init.k[0], init.k[1], init.k[2], init.axis, init.amplitude);
  }
  if (init.preset == "random")
  {
    RandomFieldOptions opt;
    opt.seed = seed;
    opt.decay = init.decay;
    opt.band = init.band;
    opt.rms = init.rms;
    return random_solenoidal_field(grid, opt);
  }
  if (init.preset == "snapshot")
  {
    VectorField b = read_snapshot(init.path);
    require_same_grid(b.grid(), grid, "initial snapshot");
    return b;
  }
  throw ConfigError("unknown initial preset '" + init.preset + "'");
}

ReducedState make_initial_reduced(const InitialSpec &init, const Grid &planar, std::uint64_t seed)
{
  ReducedState s{0.0, ScalarField(planar), ScalarField(planar)};
  if (init.preset == "single_mode")
  {
    if (init.k[2] != 0 || (init.k[0] == 0 && init.k[1] == 0))
    {
      throw ConfigError("2D single_mode needs a nonzero planar wavevector");
    }
    s.bz.set_hermitian(init.k[0], init.k[1], 0, Complex(0.5 * init.amplitude, 0.0));
    return s;
  }
  if (init.preset == "random")
  {
    RandomFieldOptions opt;
    opt.seed = seed;
    opt.decay = init.decay;
    opt.band = init.band;
    opt.rms = init.rms;
    s.bz = random_scalar_field(planar, opt);
    if (init.j_rms > 0.0)
    {
      opt.member = 1;
      opt.rms = init.j_rms;
      s.j = random_scalar_field(planar, opt);
    }
    return s;
  }
  if (init.preset == "snapshot")
  {
    s = read_reduced_snapshot(init.path);
    require_same_grid(s.bz.grid(), planar, "initial snapshot");
    return s;
  }
  throw ConfigError("initial preset '" + init.preset + "' is not available in 2D");
}

namespace
{

template <typename T, typename F>
T parse_typed(const std::string &text, F reader)
{
  Document doc = load(text);
  read_mode(doc);
  try
  {
    T c = reader(doc);
    doc.finish();
    return c;
  }
  catch (const DomainError &e)
  {
    throw ConfigError(e.what());
  }
  catch (const StructuralError &e)
  {
    throw ConfigError(e.what());
  }
}

}  // namespace

Run3dConfig parse_run3d(const std::string &text) { return parse_typed<Run3dConfig>(text, read_run3d); }
Run2dConfig parse_run2d(const std::string &text) { return parse_typed<Run2dConfig>(text, read_run2d); }
VerifyConfig parse_verify(const std::string &text) { return parse_typed<VerifyConfig>(text, read_verify); }
AdvectConfig parse_advect(const std::string &text) { return parse_typed<AdvectConfig>(text, read_advect); }

AnyConfig parse_config_text(const std::string &text)
{
  Document doc = load(text);
  const std::string mode = read_mode(doc);
  if (mode == "run3d")
  {
    return parse_run3d(text);
  }
  if (mode == "run2d")
  {
    return parse_run2d(text);
  }
  if (mode == "verify")
  {
    return parse_verify(text);
  }
  if (mode == "advect")
  {
    return parse_advect(text);
  }
  throw ConfigError("mode must be run3d, run2d, verify or advect, got '" + mode + "'");
}

AnyConfig parse_config(const std::string &path) { return parse_config_text(read_text(path)); }

std::string manifest_json(const RunManifest &m)
{
  nlohmann::ordered_json j;
  j["tool"] = "avector";
  j["version"] = m.version;
  j["command"] = m.command;
  j["config_path"] = m.config_path;
  j["config_text"] = m.config_text;
  j["multiplier"] = m.multiplier;
  j["hs_orders"] = m.hs_orders;
  j["seed"] = m.seed;
  j["threads"] = m.threads;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["status"] = m.status;
  j["files"] = m.files;
  j["snapshots"] = nlohmann::ordered_json::array();
  for (const auto &s : m.snapshots)
  {
    j["snapshots"].push_back({{"file", s.file}, {"step", s.step}, {"t", s.t}, {"int_y1", s.int_y1}});
  }
  return j.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string &json_text)
{
  RunManifest m;
  try
  {
    const auto j = nlohmann::json::parse(json_text);
    m.version = j.value("version", "");
    m.command = j.value("command", "");
    m.config_path = j.value("config_path", "");
    m.config_text = j.value("config_text", "");
    m.multiplier = j.value("multiplier", "");
    m.hs_orders = j.value("hs_orders", std::vector<double>{});
    m.seed = j.value("seed", std::uint64_t{0});
    m.threads = j.value("threads", 1);
    m.started = j.value("started", "");
    m.finished = j.value("finished", "");
    m.status = j.value("status", "");
    m.files = j.value("files", std::vector<std::string>{});
    for (const auto &s : j.value("snapshots", nlohmann::json::array()))
    {
      m.snapshots.push_back({s.at("file").get<std::string>(), s.at("step").get<std::size_t>(),
                             s.at("t").get<double>(), s.at("int_y1").get<double>()});
    }
  }
  catch (const nlohmann::json::exception &e)
  {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

}  // namespace avec
