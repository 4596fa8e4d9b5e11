#!/usr/bin/env python3
"""Zeros of L(s, chi) on the critical line for the real odd characters mod 3 and 4.

Writes the zero-list text format read by load_zero_data.
"""
import argparse

import mpmath as mp


def chi_table(q):
    if q == 3:
        return [0, 1, -1]
    if q == 4:
        return [0, 1, 0, -1]
    raise ValueError("only q = 3 and q = 4 are tabulated")


def hardy_z(t, q, chi):
    # Both characters are odd and real with root number 1.
    s = mp.mpc(0.5, t)
    theta = mp.im(mp.loggamma((s + 1) / 2)) + (t / 2) * mp.log(q / mp.pi)
    return mp.re(mp.exp(1j * theta) * mp.dirichlet(s, chi))


def zeros(q, height, step):
    chi = chi_table(q)
    f = lambda t: hardy_z(t, q, chi)
    out = []
    t0, f0 = mp.mpf(step), f(step)
    while t0 < height:
        t1 = t0 + step
        f1 = f(t1)
        if f0 * f1 < 0:
            out.append(mp.findroot(f, (t0, t1), solver="anderson"))
        t0, f0 = t1, f1
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--height", type=float, default=100)
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    mp.mp.dps = 20
    lines = ["# zeros of L(s, chi) for the real character mod q, 0 < gamma <= %g" % args.height]
    for q in args.q:
        for g in zeros(q, args.height, args.step):
            lines.append("q=%d chi=1 gamma=%s" % (q, mp.nstr(g, 12)))
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        print(text, end="")
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


if __name__ == "__main__":
    main()
