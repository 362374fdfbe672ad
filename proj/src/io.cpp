#include "gbm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gbm/errors.hpp"

namespace gbm::io {

namespace {

// %.17g round-trips doubles and is locale independent for the C locale.
void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string format_snapshot(const ScalarField& f, double t) {
  const Grid& g = f.grid();
  std::string out;
  out.reserve(24 * (f.size() + 8));
  out += std::to_string(g.nx) + " " + std::to_string(g.ny);
  for (double v : {g.x0, g.x1, g.y0, g.y1, t}) {
    out += ' ';
    append_number(out, v);
  }
  out += '\n';
  for (double v : f.values()) {
    append_number(out, v);
    out += '\n';
  }
  return out;
}

Snapshot parse_snapshot(const std::string& text) {
  std::istringstream in(text);
  std::size_t nx = 0, ny = 0;
  double x0, x1, y0, y1, t;
  if (!(in >> nx >> ny >> x0 >> x1 >> y0 >> y1 >> t)) {
    throw InvalidInput("snapshot header must be `nx ny x0 x1 y0 y1 t`");
  }
  Grid grid(nx, ny, x0, x1, y0, y1);
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(in >> values[k])) {
      throw InvalidInput("snapshot ended after " + std::to_string(k) + " of " +
                         std::to_string(values.size()) + " values");
    }
  }
  double extra;
  if (in >> extra) throw InvalidInput("snapshot has more values than nx*ny");
  return {ScalarField(grid, std::move(values)), t};
}

std::string format_timeseries_csv(const std::vector<NormSample>& series) {
  std::string out = "t,Tmax,Tmin,Nmax,Phimax,massT,massN,massPhi\n";
  for (const auto& s : series) {
    bool first = true;
    for (double v : {s.t, s.tumor_max, s.tumor_min, s.necrosis_max, s.vasculature_max,
                     s.mass_tumor, s.mass_necrosis, s.mass_vasculature}) {
      if (!first) out += ',';
      first = false;
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string format_verdicts_csv(const std::vector<Verdict>& verdicts) {
  std::string out = "monitor,verdict,worst_ratio,t_worst\n";
  for (const auto& v : verdicts) {
    out += v.monitor;
    out += v.pass ? ",pass," : ",fail,";
    append_number(out, v.worst_ratio);
    out += ',';
    append_number(out, v.t_worst);
    out += '\n';
  }
  return out;
}

std::string format_ode_csv(const ode::OdeSolution& sol) {
  std::string out = "t,T,N,Phi,S\n";
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const auto& s = sol.states[k];
    bool first = true;
    for (double v : {sol.times[k], s.tumor, s.necrosis, s.vasculature, s.total()}) {
      if (!first) out += ',';
      first = false;
      append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string gnuplot_script(const std::string& csv_name) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 't (day)'\n"
     << "set logscale y\n"
     << "plot '" << csv_name << "' using 1:2 with lines title 'max T', \\\n"
     << "     '' using 1:4 with lines title 'max N', \\\n"
     << "     '' using 1:5 with lines title 'max Phi'\n";
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SnapshotWriter::SnapshotWriter(std::filesystem::path directory, std::size_t every,
                               std::string prefix)
    : directory_(std::move(directory)), every_(every), prefix_(std::move(prefix)) {}

void SnapshotWriter::write(const GridState& s, std::size_t step) {
  if (step == last_written_) return;
  last_written_ = step;
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "_%08zu.txt", step);
  const std::pair<const char*, const ScalarField*> fields[] = {
      {"T", &s.tumor}, {"N", &s.necrosis}, {"Phi", &s.vasculature}};
  for (const auto& [name, field] : fields) {
    auto path = directory_ / (prefix_ + name + suffix);
    write_file_atomic(path, format_snapshot(*field, s.t));
    written_.push_back(path);
  }
}

void SnapshotWriter::on_start(const GridState& initial, RunReport&) { write(initial, 0); }

void SnapshotWriter::on_step(const GridState&, const GridState& current, RunReport&) {
  ++step_;
  if (every_ > 0 && step_ % every_ == 0) write(current, step_);
}

void SnapshotWriter::on_finish(const GridState& final_state, RunReport&) {
  write(final_state, step_);
}

}  // namespace gbm::io
