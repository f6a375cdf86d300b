"""How values placed on shortcut pairs get pushed back onto real arcs.

A witness list records each shortcut pair together with an intermediate
node.  Routing walks the list backwards once and splits every shortcut
value onto its two halves, so node balances never change.
"""

from fractions import Fraction

from strongflow.witness import WitnessList, divergence, wit_route


def main():
    L = WitnessList()
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 2)]:
        L.append(a, b, b)
    L.append(0, 2, 1)
    L.append(0, 3, 2)
    print("list (a, b, witness):")
    for entry in L:
        print("  %s%s" % (entry, "  arc" if entry[1] == entry[2] else ""))

    values = {(0, 3): Fraction(5), (1, 2): Fraction(1, 2), (2, 3): Fraction(2)}
    print("values on pairs:   ", values)
    print("walk for (0, 3):   ", L.walk(0, 3))
    routed = wit_route(L, values)
    print("after routing:     ", dict(sorted(routed.items())))
    print("balances unchanged:", divergence(routed) == divergence(values))

    # (3, 2) is listed after (2, 3), so its value can move onto (2, 3) with the sign flipped
    values[(3, 2)] = Fraction(3)
    flipped = wit_route(L, values, R=[(3, 2)])
    print("with (3, 2) flipped:", dict(sorted(flipped.items())))


if __name__ == "__main__":
    main()
