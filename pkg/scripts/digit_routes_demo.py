"""Print the three digit routes for a few numbers, with the quotient chain and
each T_0^W |M> step of the quantum route.

    python scripts/digit_routes_demo.py 5:2 17:3 2024:7
"""
import sys

from fockdigits.base_change import (digits_classical, digits_quantum, digits_spectral, host_register,
                                    quantum_digit, quotient_chain)


def show(n, b):
    chain = quotient_chain(n, b)
    host = host_register(n)
    print(f"n = {n}, base {b}: M = {list(chain.M)}, W = {list(chain.W)}")
    for l, (M, W) in enumerate(zip(chain.M, chain.W)):
        print(f"  l={l}: T_0^{W} |{M}> = |{quantum_digit(M, W, host)}>")
    print(f"  classical {list(digits_classical(n, b).digits)}")
    print(f"  spectral  {list(digits_spectral(n, b).digits)}")
    print(f"  quantum   {list(digits_quantum(n, b).digits)}")


if __name__ == "__main__":
    pairs = sys.argv[1:] or ["5:2", "17:3", "255:16", "2024:7"]
    for pair in pairs:
        n, b = map(int, pair.split(":"))
        show(n, b)
