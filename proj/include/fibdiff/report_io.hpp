#pragma once

// Report writers shared by the CLI and tests. Every output embeds the fully
// resolved run configuration (CSV: leading '# key=value' comment lines;
// JSON: a "config" object), and floats print with 17 significant digits so
// identical configurations produce identical bytes.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fibdiff/cps.hpp"
#include "fibdiff/diffraction.hpp"
#include "fibdiff/pingpong.hpp"

namespace fibdiff {

std::string fmt17(double v);

// ordered key/value configuration echo
using RunConfig = std::vector<std::pair<std::string, std::string>>;

void write_points_csv(std::ostream& os, const RunConfig& cfg, const EnumerationResult& res);
void write_points_json(std::ostream& os, const RunConfig& cfg, const EnumerationResult& res);

void write_bragg_csv(std::ostream& os, const RunConfig& cfg, const BraggVerification& v);
void write_bragg_json(std::ostream& os, const RunConfig& cfg, const BraggVerification& v);

void write_certificates_csv(std::ostream& os, const RunConfig& cfg,
                            const std::vector<AlmostPeriodReport>& reports);
void write_certificates_json(std::ostream& os, const RunConfig& cfg,
                             const std::vector<AlmostPeriodReport>& reports);

void write_ping_csv(std::ostream& os, const RunConfig& cfg, const PingIdentityReport& rep);
void write_ping_json(std::ostream& os, const RunConfig& cfg, const PingIdentityReport& rep);

void write_figure1_csv(std::ostream& os, const RunConfig& cfg,
                       const std::vector<Figure1Row>& rows);
void write_figure1_json(std::ostream& os, const RunConfig& cfg,
                        const std::vector<Figure1Row>& rows);

void write_periodogram_csv(std::ostream& os, const RunConfig& cfg,
                           const std::vector<PeriodogramPoint>& rows);

}  // namespace fibdiff
