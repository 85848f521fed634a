#pragma once

// Text formats: PBM (P1) masks, CSV tables and JSON documents.

#include "hcontent/content.hpp"
#include "hcontent/domains.hpp"
#include "hcontent/grid.hpp"
#include "hcontent/inequalities.hpp"
#include "hcontent/integral.hpp"
#include "hcontent/operators.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hcontent {

/// Shortest round-trip decimal form ("%.17g"-based).
std::string format_double(double v);

/// Plain PBM, one text row per grid row j = 0, 1, ...; '1' marks a cell.
void write_pbm(std::ostream& out, const DyadicMask& mask);
/// Accepts square power-of-two images; anything else is an InputError.
DyadicMask read_pbm(std::istream& in);

/// i,j,value,gradmag for every cell of the domain (gradmag empty if absent).
void write_function_csv(std::ostream& out, const GridFunction& f, const DyadicMask& domain);
/// t,h
void write_step_csv(std::ostream& out, const StepFunction& step);
/// i,j,lhs,rhs,ratio,r_star
void write_hedberg_csv(std::ostream& out, const HedbergReport& report);
/// level,preset,p,delta,kappa,q,lhs,rhs,ratio,b_star
void write_reports_csv(std::ostream& out, const std::vector<RatioReport>& rows);

std::string cover_json(const CoverSolution& cover);
std::string domain_json(const Domain& domain);
std::string reports_json(const std::vector<RatioReport>& rows);

/// Writes `text` to `path` or to stdout when `path` is empty or "-".
/// Throws IoError on failure.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

} // namespace hcontent
