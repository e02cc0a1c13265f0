#pragma once

#include <string>

#include <json.hpp>

#include "weylkit/graded.hpp"
#include "weylkit/hcp.hpp"
#include "weylkit/newton.hpp"
#include "weylkit/weyl.hpp"

// Text and JSON forms. All printers emit the canonical form (terms ordered
// lexicographically in the exponents); parse(print(v)) == v exactly.

namespace weylkit {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

std::string print_rat(const Rat& r);
Rat parse_rat(const std::string& s);

// "(c0 + c1*z + ...)@k"
std::string print_cyc(const CycElem& c);
CycElem parse_cyc(const std::string& s);

// "c0 + c1*x + ... + O(x^M)"
std::string print_series(const TruncSeries<Rat>& s);
TruncSeries<Rat> parse_series(const std::string& s);

// "3*x^2*d + 1/2*d^3 + 1"
std::string print_weyl(const WeylOp<Rat>& p);
WeylOp<Rat> parse_weyl(const std::string& s);

nlohmann::json weyl_to_json(const WeylOp<Rat>& p);
WeylOp<Rat> weyl_from_json(const nlohmann::json& j);

// Atoms "x^l*A_i*d^l*D^r" and "B_j*D^r" with cyclotomic coefficients in
// parentheses and a trailing "@k" modulus marker.
std::string print_hcpc(const Hcpc& h);
Hcpc parse_hcpc(const std::string& s);

nlohmann::json hcpc_to_json(const Hcpc& h);
Hcpc hcpc_from_json(const nlohmann::json& j);

nlohmann::json graded_to_json(const GradedOp& g);

nlohmann::json polygon_report_json(const WeylOp<Rat>& p, const std::vector<Weight>& ws);
std::string polygon_report_text(const WeylOp<Rat>& p, const std::vector<Weight>& ws);

} // namespace weylkit
