#pragma once

// Named schema checks over a model, producing a violation report.
// Rule ids are a stable public contract:
//   CPS-1  system equals the components appearing in the cps logs
//          (lenient: log components are a subset of system)
//   CPS-2  system, principals and setups are all non-empty
//   CPS-3  setup principals belong to the cps principal set
//   CPS-4  system equals the setup domain (lenient: system is a subset)
//   STS-0  foreign cps ids are unique
//   STS-1  the ego cps is not among the foreign cps
//   STS-2  ego principals belong to the sts principal set
//   STS-3  every foreign cps's principals belong to the sts principal set
//   STS-MISSING  no ego cps is declared at all
//   AM-1   ego log accounts are known to the mechanism
//   AM-2   every foreign cps's log accounts are known to the mechanism
//   AM-3   hasAccount only mentions known accounts
//   AM-4   (warning) hasAccount covers every mechanism account, so the
//          known accounts are not a strict subset
//   AM-5   a declared missedByEgo set matches the recomputed one
//   OBS-1  (warning, strict only) the observation set is functional on
//          (event, component)

#include <string>
#include <vector>

#include "acct/model.hpp"

namespace acctlib {

enum class CheckMode { Strict, Lenient };
enum class Severity { Error, Warning };

struct Violation {
    std::string rule;
    Severity severity = Severity::Error;
    std::vector<std::string> subjects;
    std::string message;

    bool operator==(const Violation&) const = default;
};

std::vector<Violation> check_cps(const Model& model, const std::string& cps_id, CheckMode mode);
std::vector<Violation> check_sts(const Model& model, CheckMode mode);
std::vector<Violation> check_am(const Model& model, CheckMode mode);

// Union of the three checkers over the ego and all foreign cps, in a stable
// order (rule id, then subjects). Pure function of (model, mode).
std::vector<Violation> check_all(const Model& model, CheckMode mode);

const char* to_string(Severity s);

}  // namespace acctlib
