#include "vanet/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "vanet/theory.hpp"

namespace vanet {

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

void provenance_lines(std::ofstream& out, const std::string& provenance) {
  if (!provenance.empty()) out << "# " << provenance << "\n";
}

}  // namespace

void write_metrics_csv(const std::string& path, std::span<const MetricsRecord> records,
                       const std::string& provenance) {
  auto out = open_out(path);
  provenance_lines(out, provenance);
  out << "step,nodes,edges,lcc,var_all,var_rsu,mean_deg\n";
  for (const MetricsRecord& r : records) {
    out << r.step << ',' << r.node_count << ',' << r.edge_count << ','
        << csv_double(r.lcc_fraction) << ',' << csv_double(r.degree_variance_all) << ','
        << csv_double(r.degree_variance_rsu) << ',' << csv_double(r.mean_degree) << "\n";
  }
  finish(out, path);
}

void write_histogram_csv(const std::string& path, const DegreeHistogram& hist,
                         const std::string& provenance) {
  auto out = open_out(path);
  provenance_lines(out, provenance);
  out << "k_lo,k_hi,count,density\n";
  for (const auto& bin : hist.bins) {
    out << csv_double(bin.k_lo) << ',' << csv_double(bin.k_hi) << ',' << bin.count << ','
        << csv_double(bin.density) << "\n";
  }
  finish(out, path);
}

void write_attack_csv(const std::string& path, std::span<const AttackSweepRow> rows,
                      const std::string& provenance) {
  auto out = open_out(path);
  provenance_lines(out, provenance);
  out << "p,strategy,f,mean_lcc_after,sd_lcc_after,trials\n";
  for (const AttackSweepRow& r : rows) {
    out << csv_double(r.p) << ',' << to_string(r.strategy) << ',' << csv_double(r.f) << ','
        << csv_double(r.mean_lcc_after) << ',' << csv_double(r.sd_lcc_after) << ',' << r.trials
        << "\n";
  }
  finish(out, path);
}

void write_apl_csv(const std::string& path, std::span<const AplSweepRow> rows,
                   const std::string& provenance) {
  auto out = open_out(path);
  provenance_lines(out, provenance);
  out << "p,m,mean_apl\n";
  for (const AplSweepRow& r : rows) {
    out << csv_double(r.p) << ',' << r.m << ',' << csv_double(r.mean_apl) << "\n";
  }
  finish(out, path);
}

void write_theory_csv(const std::string& path, int m, double p, int k_max,
                      const std::string& provenance) {
  auto out = open_out(path);
  provenance_lines(out, provenance);
  if (p == 0.0) {
    out << "# regime=powerlaw m=" << m << " gamma=3\n";
  } else if (p == 1.0) {
    out << "# regime=exponential m=" << m << " rate=" << csv_double(1.0 / m) << "\n";
  } else {
    const theory::TheoryCurve c = theory::tunable_params(m, p);
    out << "# regime=tunable m=" << m << " p=" << csv_double(p) << " gamma="
        << csv_double(c.gamma) << " a=" << csv_double(c.a) << " C=" << csv_double(c.C) << "\n";
  }
  out << "k,pk\n";
  for (int k = m; k <= k_max; ++k) {
    double pk;
    if (p == 0.0) {
      pk = theory::powerlaw_pdf(k, m);
    } else if (p == 1.0) {
      pk = theory::exponential_pdf(k, m);
    } else {
      pk = theory::tunable_pdf(k, m, p);
    }
    out << k << ',' << csv_double(pk) << "\n";
  }
  finish(out, path);
}

}  // namespace vanet
