"""Compare the numba and numpy backends of the two hot kernels.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from quditinv import _kernels
from quditinv.polynomials import generalized_determinant_tensor, permutation_table
from quditinv.tensor import random_state


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - start)
    return min(times), value


def tuple_sum_cases():
    for n, k in [(2, 12), (2, 18), (2, 22), (3, 6), (3, 8), (4, 4), (5, 4)]:
        u = random_state(n, k, 0)
        perms, signs = permutation_table(n)
        args = (u.components, n, k, perms, signs, True)
        yield f"gdet n={n} k={k}", args


def contract_cases():
    for n, k in [(2, 6), (3, 4), (4, 2)]:
        T = generalized_determinant_tensor(n, k)
        nz = np.nonzero(T.array.reshape(-1))[0]
        rows = np.stack(np.unravel_index(nz, T.rows_view().shape), axis=1).astype(np.int64)
        u = random_state(n, k, 1)
        yield f"contract n={n} k={k} nnz={nz.size}", (T.array.reshape(-1)[nz], rows, u.components)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not _kernels.NUMBA_AVAILABLE:
        print("numba not installed; only the numpy backend can run")
    print(f"{'case':<34} {'numpy s':>10} {'numba s':>10} {'speedup':>8} {'|diff|/|v|':>11}")
    groups = [
        (tuple_sum_cases(), _kernels.signed_tuple_sum_numpy, _kernels.signed_tuple_sum_numba),
        (contract_cases(), _kernels.sparse_contract_numpy, _kernels.sparse_contract_numba),
    ]
    for cases, np_fn, nb_fn in groups:
        for name, call_args in cases:
            t_np, v_np = best_of(lambda: np_fn(*call_args), args.repeat)
            if nb_fn is None:
                print(f"{name:<34} {t_np:>10.4f}")
                continue
            nb_fn(*call_args)  # compile outside the timing
            t_nb, v_nb = best_of(lambda: nb_fn(*call_args), args.repeat)
            rel = abs(v_np - v_nb) / max(abs(v_np), 1e-300)
            print(f"{name:<34} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f} {rel:>11.2e}")


if __name__ == "__main__":
    main()
