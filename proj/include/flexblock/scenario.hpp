#pragma once

#include <string>

#include "flexblock/block.hpp"
#include "flexblock/mpc.hpp"
#include "flexblock/profiles.hpp"

namespace flexblock {

/// A fully resolved scenario: block composition, profile source, penetration
/// scaling, run length and controller settings.
struct ScenarioSpec {
    std::string name = "scenario";
    std::array<bool, kNumUnitKinds> included{};
    std::array<UnitModel, kNumUnitKinds> units{};
    bool synthesize = true;
    SynthSpec synth;
    std::string profiles_file;  // used when !synthesize; absolute or cwd-relative
    double penetration_scale = 0.0;
    double run_hours = -1.0;  // negative = full profile span
    MpcConfig mpc;
};

/// Parse a scenario JSON document. Unknown unit kinds, unknown keys and
/// malformed values raise FlexError(Err::ParseError/Err::ValidationError)
/// with the offending field named. Relative profile paths are resolved
/// against the scenario file's directory.
ScenarioSpec load_scenario(const std::string& path);

/// The three reference compositions: 1 = renewables only, 2 = plus the
/// hydrogen chain, 3 = plus battery storage and the gas unit.
ScenarioSpec canonical_scenario(int which, const SynthSpec& synth);

/// Block assembled from the spec's included units.
EnergyBlock make_block(const ScenarioSpec& spec);

/// Profiles loaded or synthesized per the spec, with the spec's penetration
/// scaling applied. `seed_override` (when non-zero) replaces the synthesis
/// seed; `extra_ratio` (>= 0) applies an additional penetration factor on
/// top of the spec's own (used by sweeps).
Profiles make_profiles(const ScenarioSpec& spec, std::uint64_t seed_override = 0,
                       double extra_ratio = 0.0);

/// Number of dispatch steps for a run (full span or run_hours, whichever is
/// shorter). Throws FlexError(Err::ValidationError) when the profiles cannot
/// cover the requested horizon.
int run_steps(const ScenarioSpec& spec, const Profiles& profiles);

/// Pack profile series into the receding-horizon inputs.
RunInputs make_run_inputs(const Profiles& profiles, int n_steps);

}  // namespace flexblock
