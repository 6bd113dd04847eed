#pragma once

#include "debx/extremal.hpp"

namespace fixtures {

/// The a = 1 pipeline is expensive to build (a few seconds), so every test
/// file shares one instance, constructed on first use.
struct Pipeline {
    debx::ext::ExtremalPair pair;
    debx::ext::ExtremalPair heaviside;

    Pipeline()
        : pair(debx::ext::build_extremal(1.0, debx::ext::PairKind::de_branges, 1.0,
                                         debx::QuadratureSpec{})),
          heaviside(debx::ext::with_kind(pair, debx::ext::PairKind::heaviside)) {}
};

inline const Pipeline& pipeline_a1() {
    static const Pipeline instance;
    return instance;
}

}  // namespace fixtures
