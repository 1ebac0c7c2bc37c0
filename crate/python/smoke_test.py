"""Smoke test for the sologic Python bindings.

Build first with `pip install --no-build-isolation -e crates/python`.
"""

import sologic_py as so


def main():
    assert so.encode("forall X^1_0. (X^1_0(x1) -> X^1_0(x2))") == "forall x0. (Ap1(x0, x1) -> Ap1(x0, x2))"
    assert so.decode("Ap1(f(a), a)") == "bot"

    a = so.Formula("forall X^0_0. (X^0_0 -> X^0_0)")
    assert a.is_l2_pure() and a.is_closed()
    s = a.star()
    assert s.is_l1_pure()
    assert s.rev().is_l2_pure()

    p = a.idempotent_proof()
    assert p.check() is None
    down = p.translate_down()
    assert down.check() is None
    back = down.translate_back(p.hypotheses, p.conclusion)
    assert back.check() is None and back.conclusion.alpha_eq(p.conclusion)

    k = so.KripkeModel.peirce()
    body = so.Formula("((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0")
    assert not k.force("0", body, "(interp (X^0_0 pi1) (X^0_1 pi2))")
    assert not k.is_full()
    peirce = so.Formula("forall X^0_0. forall X^0_1. (((X^0_0 -> X^0_1) -> X^0_0) -> X^0_0)")
    assert not k.valid(peirce)

    m = so.ClassicalModel("(model2 (domain a b) (range 1 (((a)) ((a) (b)))))")
    assert m.valid(peirce)

    found = so.countermodel(peirce, bounds="points=2,domain=1,arity=0")
    assert found["status"] == "countermodel-found", found
    assert so.countermodel(so.Formula("X^0_0 -> X^0_0"), bounds="points=2,domain=1,arity=0")["status"] == "exhausted"

    items = so.paper_examples()
    failed = [name for name, status, _ in items if status != "verified"]
    assert items and not failed, failed

    print(f"smoke test passed: {len(items)} worked examples verified")


if __name__ == "__main__":
    main()
