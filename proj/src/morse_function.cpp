#include "morsetrack/morse_function.hpp"

#include <string>

#include "morsetrack/errors.hpp"

namespace morsetrack {

std::vector<MorseViolation> validate_morse_function(const CellComplex& K,
                                                    const MorseValues& f) {
    if (f.size() != K.size())
        throw InputError("validate_morse_function: value count != cell count");
    std::vector<MorseViolation> violations;
    for (std::size_t i = 0; i < K.size(); ++i) {
        CellId c = static_cast<CellId>(i);
        std::vector<CellId> low, high;
        for (CellId b : K.cofaces(c))
            if (f[static_cast<std::size_t>(b)] <= f[i])
                low.push_back(b);
        for (CellId g : K.faces(c))
            if (f[static_cast<std::size_t>(g)] >= f[i])
                high.push_back(g);
        if (low.size() > 1)
            violations.push_back({c, MorseViolation::Kind::LowCofaces, std::move(low)});
        if (high.size() > 1)
            violations.push_back({c, MorseViolation::Kind::HighFaces, std::move(high)});
    }
    return violations;
}

DiscreteVectorField field_from_function(const CellComplex& K,
                                        const MorseValues& f) {
    if (!validate_morse_function(K, f).empty())
        throw InputError("field_from_function: not a discrete Morse function");
    DiscreteVectorField V(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) {
        CellId c = static_cast<CellId>(i);
        for (CellId b : K.cofaces(c)) {
            if (f[static_cast<std::size_t>(b)] <= f[i]) {
                // Unique by the validated cardinality conditions, and the
                // mutual-exclusivity argument keeps the matching disjoint.
                V.pair(K, c, b);
                break;
            }
        }
    }
    return V;
}

} // namespace morsetrack
