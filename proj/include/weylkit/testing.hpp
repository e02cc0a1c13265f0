#pragma once

namespace weylkit::testing {

// Fault-injection hook for the verification harness: skews the x^a B_j
// absorption coefficient in the rewriting engine so the identity suite can
// demonstrate that it isolates a broken rule. Never set outside tests.
extern bool corrupt_b_absorption;

} // namespace weylkit::testing
