#include "nirlw/report.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "nirlw/errors.hpp"

namespace nirlw {
namespace {

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string output_stem(const RunReport& report) {
  return report.name + "_p" + format_number(report.p) + "_r" + format_number(report.r) + "_seed" +
         std::to_string(report.seed);
}

void write_iterations_csv(std::ostream& out, const IterationLog& log) {
  out << "n,k,t,t_tilde,omega,alpha,r_n,F_residual,d2,gamma\n";
  for (const auto& rec : log.records) {
    out << rec.n << ',' << rec.k << ',' << format_number(rec.t) << ','
        << format_number(rec.t_tilde) << ',' << format_number(rec.omega) << ','
        << format_number(rec.alpha) << ',' << format_number(rec.r_n) << ','
        << optional_number(rec.f_residual) << ',' << optional_number(rec.d2) << ','
        << optional_number(rec.gamma) << '\n';
  }
}

void write_summary_header(std::ostream& out) {
  out << "preset,p,r,delta,seed,n_star,N_p,err_L2,err_Lp,reason,wall_ms\n";
}

void write_summary_row(std::ostream& out, const RunReport& report) {
  out << report.name << ',' << format_number(report.p) << ',' << format_number(report.r) << ','
      << format_number(report.delta) << ',' << report.seed << ',' << report.n_star << ','
      << report.total_inner << ',' << format_number(report.error.l2) << ','
      << format_number(report.error.lp) << ',' << to_string(report.reason) << ','
      << format_number(report.wall_ms) << '\n';
}

void write_profile_csv(std::ostream& out, const RunReport& report, const GridFunction& truth) {
  const GridDomain& d = truth.domain();
  require_same_domain(report.reconstruction, truth, "write_profile_csv");
  out << (d.dim == 2 ? "x,y,c_true,c_rec\n" : "x,c_true,c_rec\n");
  for (int j = 0; j < d.ny; ++j) {
    for (int i = 0; i < d.nx; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * d.nx + i;
      out << format_number(d.x(i)) << ',';
      if (d.dim == 2) out << format_number(d.y(j)) << ',';
      out << format_number(truth[idx]) << ',' << format_number(report.reconstruction[idx]) << '\n';
    }
  }
}

std::vector<std::filesystem::path> write_run_outputs(const std::filesystem::path& dir,
                                                     const RunReport& report,
                                                     const GridFunction& truth) {
  std::filesystem::create_directories(dir);
  const std::string stem = output_stem(report);
  const std::filesystem::path iters = dir / (stem + "_iterations.csv");
  const std::filesystem::path profile = dir / (stem + "_profile.csv");
  const std::filesystem::path summary = dir / (stem + "_summary.csv");
  {
    auto out = open_output(iters);
    write_iterations_csv(out, report.log);
  }
  {
    auto out = open_output(profile);
    write_profile_csv(out, report, truth);
  }
  {
    auto out = open_output(summary);
    write_summary_header(out);
    write_summary_row(out, report);
  }
  return {iters, profile, summary};
}

std::filesystem::path write_summary_csv(const std::filesystem::path& dir,
                                        const std::vector<RunReport>& reports) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / "summary.csv";
  auto out = open_output(path);
  write_summary_header(out);
  for (const auto& r : reports) write_summary_row(out, r);
  return path;
}

}  // namespace nirlw
