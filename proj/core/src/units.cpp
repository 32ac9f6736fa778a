#include "fermat/units.hpp"

#include "fermat/errors.hpp"

namespace fermat {

UnitSystem::UnitSystem(double speed_of_light, double gravitational_constant)
    : c_(speed_of_light), G_(gravitational_constant) {
    if (!(c_ > 0.0) || !(G_ > 0.0)) {
        throw DomainError("UnitSystem: c and G must be positive");
    }
}

}  // namespace fermat
