#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gbm/grid.hpp"
#include "gbm/ode.hpp"
#include "gbm/pde.hpp"
#include "gbm/report.hpp"

namespace gbm::io {

/// Snapshot text: header line `nx ny x0 x1 y0 y1 t`, then nx*ny row-major values, one per line.
std::string format_snapshot(const ScalarField& f, double t);

struct Snapshot {
  ScalarField field;
  double t = 0.0;
};

/// Throws InvalidInput on malformed text.
Snapshot parse_snapshot(const std::string& text);

/// `t,Tmax,Tmin,Nmax,Phimax,massT,massN,massPhi` with one row per sample.
std::string format_timeseries_csv(const std::vector<NormSample>& series);

/// `monitor,verdict,worst_ratio,t_worst`.
std::string format_verdicts_csv(const std::vector<Verdict>& verdicts);

/// `t,T,N,Phi,S` rows of an ODE trajectory.
std::string format_ode_csv(const ode::OdeSolution& sol);

/// Plain-text gnuplot commands plotting the time series CSV.
std::string gnuplot_script(const std::string& csv_name);

/// Writes through a temporary sibling and renames, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

/// Writes T/N/Phi snapshots every `every` steps plus the initial and final levels,
/// named `<prefix>T_<step>.txt` etc. inside `directory`.
class SnapshotWriter : public pde::StepObserver {
 public:
  SnapshotWriter(std::filesystem::path directory, std::size_t every, std::string prefix = "");

  void on_start(const GridState& initial, RunReport& report) override;
  void on_step(const GridState& previous, const GridState& current, RunReport& report) override;
  void on_finish(const GridState& final_state, RunReport& report) override;

  const std::vector<std::filesystem::path>& written() const noexcept { return written_; }

 private:
  void write(const GridState& s, std::size_t step);

  std::filesystem::path directory_;
  std::size_t every_;
  std::string prefix_;
  std::size_t step_ = 0;
  std::size_t last_written_ = static_cast<std::size_t>(-1);
  std::vector<std::filesystem::path> written_;
};

}  // namespace gbm::io
