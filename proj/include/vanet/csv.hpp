#pragma once

#include <span>
#include <string>

#include "vanet/analysis.hpp"
#include "vanet/engine.hpp"

namespace vanet {

// Stable textual form for real values in CSV output ("%.10g"); shared by
// every writer so reruns are byte-identical.
std::string csv_double(double v);

// All writers emit UTF-8 CSV: '#'-prefixed provenance lines first, then a
// header row, then data rows.

// step,nodes,edges,lcc,var_all,var_rsu,mean_deg
void write_metrics_csv(const std::string& path, std::span<const MetricsRecord> records,
                       const std::string& provenance);

// k_lo,k_hi,count,density
void write_histogram_csv(const std::string& path, const DegreeHistogram& hist,
                         const std::string& provenance);

// p,strategy,f,mean_lcc_after,sd_lcc_after,trials
void write_attack_csv(const std::string& path, std::span<const AttackSweepRow> rows,
                      const std::string& provenance);

// p,m,mean_apl
void write_apl_csv(const std::string& path, std::span<const AplSweepRow> rows,
                   const std::string& provenance);

// k,pk rows of one theory pdf sampled at integer k in [m, k_max].
void write_theory_csv(const std::string& path, int m, double p, int k_max,
                      const std::string& provenance);

}  // namespace vanet
