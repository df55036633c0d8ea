#include "flexblock/block.hpp"

#include <string>

namespace flexblock {

EnergyBlock default_block() {
    EnergyBlock b;
    for (int i = 0; i < kNumUnitKinds; ++i) {
        b.units[i] = default_unit(static_cast<UnitKind>(i));
        b.included[i] = true;
    }
    return b;
}

EnergyBlock block_from_units(const std::vector<UnitModel>& models) {
    EnergyBlock b;
    std::array<bool, kNumUnitKinds> seen{};
    for (int i = 0; i < kNumUnitKinds; ++i) {
        b.units[i] = default_unit(static_cast<UnitKind>(i));
        b.included[i] = false;
    }
    for (const UnitModel& m : models) {
        int idx = kind_index(m.kind);
        if (seen[idx])
            throw FlexError(Err::DuplicateUnit,
                            std::string("unit kind '") + kind_name(m.kind) + "' appears twice");
        seen[idx] = true;
        b.units[idx] = m;
        b.included[idx] = true;
    }
    for (int i = 0; i < kNumUnitKinds; ++i) {
        if (!b.included[i]) exclude_unit(b, static_cast<UnitKind>(i));
    }
    return b;
}

void exclude_unit(EnergyBlock& block, UnitKind k) {
    UnitModel& m = block.unit(k);
    m.p_gen_min_mw = m.p_gen_max_mw = 0.0;
    m.p_load_min_mw = m.p_load_max_mw = 0.0;
    block.included[kind_index(k)] = false;
}

std::vector<Violation> validate_block(const EnergyBlock& block) {
    std::vector<Violation> all;
    for (int i = 0; i < kNumUnitKinds; ++i) {
        if (!block.included[i]) continue;
        for (Violation v : validate_unit(block.units[i])) {
            v.field = std::string(kind_name(static_cast<UnitKind>(i))) + "." + v.field;
            all.push_back(std::move(v));
        }
    }
    return all;
}

BlockState initial_block_state(const EnergyBlock& block) {
    BlockState s;
    for (int i = 0; i < kNumUnitKinds; ++i) s[i] = initial_state(block.units[i]);
    return s;
}

}  // namespace flexblock
