"""Time the pure-Python kernels against the compiled ones on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from sepiso import _pykernels
from sepiso.codes import full_code, generate_code
from sepiso.groups import cyclic_group, direct_product
from sepiso.spaces import PointSpace

try:
    from sepiso import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    z2 = cyclic_group(2)
    klein = direct_product(z2, z2)
    big = full_code(PointSpace.of_size(4), klein)  # 256 elements
    wide = generate_code(
        PointSpace.of_size(12), z2, [[int(i == j or i == (j + 1) % 12) for i in range(12)] for j in range(11)]
    )
    sz, sc = list(big.sigma_zero().masks), list(big.sigma_cozero().masks)
    chain = [(1 << k) - 1 ^ (1 << (k // 2)) for k in range(1, 15)]
    return {
        "sigma_closure (14 sets on 15 points)": ("sigma_closure_masks", (chain, 1 << 16)),
        "product_table (|A|=256)": (
            "product_table",
            (big.flat_values, len(big), big.n_points, klein.flat_table, klein.order),
        ),
        "separating_violation (|A|=2048)": ("separating_violation", (wide.coz_masks, wide.coz_masks)),
        "singleton_supports (|A|=2048)": (
            "singleton_supports",
            (wide.zero_masks, [True] * len(wide), wide.n_points),
        ),
        "controllable_violation (|A|=256)": (
            "controllable_violation",
            (big.flat_values, len(big), big.n_points, big.coz_masks, sz, sc),
        ),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the Python kernels are timed")
    print(f"{'kernel':40s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, (fn, fargs) in workloads().items():
        t_py = min(timeit.repeat(lambda: getattr(_pykernels, fn)(*fargs), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{name:40s} {t_py * 1e3:10.2f} {'-':>10s} {'-':>8s}")
            continue
        assert getattr(_pykernels, fn)(*fargs) == getattr(_ckernels, fn)(*fargs)
        t_c = min(timeit.repeat(lambda: getattr(_ckernels, fn)(*fargs), number=1, repeat=args.repeat))
        print(f"{name:40s} {t_py * 1e3:10.2f} {t_c * 1e3:10.2f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
