#pragma once

#include <array>
#include <vector>

#include "flexblock/units.hpp"

namespace flexblock {

/// The electric-hydrogen energy block: one slot per unit kind in the fixed
/// state ordering (wind, pv, battery, hydrogen, gas). A slot can be excluded
/// from a scenario; excluded units keep their model but have their power
/// bounds pinned to zero so all matrix dimensions stay fixed.
struct EnergyBlock {
    std::array<UnitModel, kNumUnitKinds> units;
    std::array<bool, kNumUnitKinds> included{};

    const UnitModel& unit(UnitKind k) const { return units[kind_index(k)]; }
    UnitModel& unit(UnitKind k) { return units[kind_index(k)]; }
    bool has(UnitKind k) const { return included[kind_index(k)]; }
};

/// Block-wide state, one entry per slot in kind order.
using BlockState = std::array<UnitState, kNumUnitKinds>;

/// All five default units, all included.
EnergyBlock default_block();

/// Assemble a block from an explicit unit list.
/// Throws FlexError(Err::DuplicateUnit) when a kind appears twice.
/// Kinds not present in `models` are filled with defaults and excluded.
EnergyBlock block_from_units(const std::vector<UnitModel>& models);

/// Disable a unit: zero power bounds, so every control stays pinned at zero.
void exclude_unit(EnergyBlock& block, UnitKind k);

/// validate_unit over every included unit, each violation prefixed by kind.
std::vector<Violation> validate_block(const EnergyBlock& block);

/// Initial BlockState from soc_init of every unit.
BlockState initial_block_state(const EnergyBlock& block);

}  // namespace flexblock
