"""Independent brute-force reference values for the poker tests.

Written from the game rules alone (no shared code with the C++ engine).
Run: python3 tests/oracles/poker_oracle.py
"""
from fractions import Fraction
from itertools import permutations

# ---------------- Kuhn poker ----------------
KUHN_TERMINAL = {"pp", "bp", "bb", "pbp", "pbb"}


def kuhn_payoff(cards, h):
    if h == "bp":
        return 1
    if h == "pbp":
        return -1
    stake = 2 if h in ("bb", "pbb") else 1
    return stake if cards[0] > cards[1] else -stake


def kuhn_histories():
    out = []

    def rec(h):
        if h in KUHN_TERMINAL:
            out.append(h)
            return
        for a in "pb":
            rec(h + a)

    rec("")
    return out


def kuhn_value(pol0, pol1):
    """pol: dict infoset-> prob of bet. infoset = (card, history)."""
    total = Fraction(0)
    for cards in permutations(range(3), 2):
        for h in kuhn_histories():
            p = Fraction(1, 6)
            for i, a in enumerate(h):
                player = i % 2
                pol = pol0 if player == 0 else pol1
                pb = pol((cards[player], h[:i]))
                p *= pb if a == "b" else 1 - pb
            total += p * kuhn_payoff(cards, h)
    return total


def kuhn_best_response_value(responder, other):
    """Brute force over all 64 deterministic policies of the responder."""
    infosets = [(c, h) for c in range(3) for h in (["", "pb"] if responder == 0 else ["p", "b"])]
    best = None
    for mask in range(1 << len(infosets)):
        table = {s: Fraction((mask >> i) & 1) for i, s in enumerate(infosets)}
        pol = lambda s, t=table: t[s]
        if responder == 0:
            v = kuhn_value(pol, other)
        else:
            v = -kuhn_value(other, pol)
        best = v if best is None or v > best else best
    return best


uniform = lambda s: Fraction(1, 2)
v0 = kuhn_value(uniform, uniform)
br0 = kuhn_best_response_value(0, uniform)
br1 = kuhn_best_response_value(1, uniform)
print("kuhn uniform value p0:", v0, float(v0))
print("kuhn BR value p0 vs uniform:", br0, float(br0))
print("kuhn BR value p1 vs uniform:", br1, float(br1))
nash_conv = (br0 - v0) + (br1 + v0)
print("kuhn uniform NashConv:", nash_conv, float(nash_conv), "exploitability", float(nash_conv / 2))

# ---------------- Leduc poker ----------------
# 6 cards: rank = c // 2, ante 1, raise 2 then 4, max 2 raises per round.


def leduc_round_sequences(max_raises=2):
    """Betting sequences of one round: (string, ended_by_fold)."""
    seqs = []

    def rec(s, raises, facing):
        # legal: fold if facing, call, raise if raises < max
        opts = []
        if facing:
            opts.append("f")
        opts.append("c")
        if raises < max_raises:
            opts.append("r")
        for a in opts:
            t = s + a
            if a == "f":
                seqs.append((t, True))
            elif a == "c":
                if len(t) >= 2:
                    seqs.append((t, False))
                else:
                    rec(t, raises, False)
            else:
                rec(t, raises + 1, True)

    rec("", 0, False)
    return seqs


round_seqs = leduc_round_sequences()
infosets = [set(), set()]
terminals = 0
for c0 in range(6):
    for c1 in range(6):
        if c1 == c0:
            continue
        for s1, fold1 in round_seqs:
            for i in range(len(s1)):
                infosets[i % 2].add((c0 if i % 2 == 0 else c1, None, s1[:i]))
            if fold1:
                terminals += 1
                continue
            for pub in range(6):
                if pub in (c0, c1):
                    continue
                for s2, _ in round_seqs:
                    for i in range(len(s2)):
                        p = i % 2
                        infosets[p].add((c0 if p == 0 else c1, pub, s1 + "/" + s2[:i]))
                    terminals += 1
print("leduc round sequences:", len(round_seqs))
print("leduc infosets per player:", len(infosets[0]), len(infosets[1]))
print("leduc terminal histories:", terminals)
