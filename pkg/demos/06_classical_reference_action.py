# The classical exponentiation action, as a sanity mirror for the quantum lab.
#
# a * s = s^a mod 23 on the order-11 subgroup generated by 2 (minus the
# identity). The action is regular, so pushing the uniform group measure
# through the origin's orbit gives the exact uniform distribution, and the
# product-then-act construction becomes the textbook keyed function.

import sys

from qgalab.ega import (
    check_orbit_uniformity,
    check_properties,
    instantiate_exp_action,
    nr_prf,
    nr_prf_keygen,
)
from qgalab.rng import stream


def main():
    action = instantiate_exp_action()
    print(f"group Z_11^* acting on {action.set_elements}, origin {action.origin}")

    props = check_properties(action)
    print(f"transitive={props.transitive} free={props.free} "
          f"faithful={props.faithful} regular={props.regular}")

    uni = check_orbit_uniformity(action, 20_000, stream(53, "demo-ega"))
    print(f"orbit chi-square over {uni.trials} draws: "
          f"stat={uni.statistic:.2f} p={uni.p_value:.3f}")

    key = nr_prf_keygen(action, 4, stream(53, "demo-ega-key"))
    print(f"key elements: {key.elements}")
    for x in ("0000", "0001", "1000", "1111"):
        print(f"  f({x}) = {nr_prf(action, key, x)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
