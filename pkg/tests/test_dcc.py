"""Target-language typing and reduction: labels applied to closures."""

import pytest

from defuncc.cc import cc_infer
from defuncc.dcc import (
    dcc_check,
    dcc_equiv,
    dcc_infer,
    dcc_normalize,
    dcc_reduce_step,
    dcc_reduce_trace,
    dcc_wf,
    label_beta,
    label_pi_type,
)
from defuncc.defun import Translation, defun, label_union
from defuncc.errors import (
    ClosureArity,
    ClosureTypeMismatch,
    UnboundVariable,
    UnknownLabel,
)
from defuncc.surface import parse_dcc, parse_term
from defuncc.syntax import (
    Add,
    App,
    Ctx,
    Label,
    NatLit,
    NatType,
    Universe,
    Var,
    alpha_eq,
)

EMPTY = Ctx()

PAIR_DEFS = parse_dcc(
    """
    label l0 {} (x : Nat) -> Nat := add x 1;
    label l1 {} (x : Nat) -> Nat := add x 1;
    label l2 {f : Nat -> Nat} (n : Nat) -> Nat := f (f n);
    label l3 {A : Type 0, a : A} (x : Nat) -> A := a;
    """
).labels


@pytest.fixture(scope="module")
def compose_st(elaborated):
    elab = elaborated("compose_simply_typed")
    return elab, defun(elab.ctx, elab.main)


def shared_run(ctx, t1, t2):
    """Translate two judgements in one minting scope so label ids agree."""
    run = Translation()
    run.translate_context(ctx)
    a, p1 = run.translate(cc_infer(ctx, t1))
    b, p2 = run.translate(cc_infer(ctx, t2))
    ren = run.finalize()
    return ren.term(a), ren.term(b), label_union(
        ren.label_ctx(p1), ren.label_ctx(p2)
    )


class TestInfer:
    def test_translated_compose_has_arrow_chain_type(self, compose_st):
        elab, result = compose_st
        ty = dcc_infer(result.defs, result.dcc_ctx, result.term)
        expected = parse_term("(f : B -> C) -> (g : A -> B) -> (x : A) -> C")
        assert alpha_eq(ty, expected)

    def test_translated_type_matches_inferred_type(self, compose_st):
        elab, result = compose_st
        ty = dcc_infer(result.defs, result.dcc_ctx, result.term)
        assert dcc_equiv(result.defs, ty, result.type_term)

    def test_dependent_compose_label_type(self, elaborated):
        elab = elaborated("compose_dependent")
        result = defun(elab.ctx, elab.main)
        ty = dcc_infer(result.defs, EMPTY, result.term)
        assert dcc_equiv(result.defs, ty, result.type_term)
        assert result.term == Label(0, ())

    def test_closure_arguments_typed_incrementally(self):
        # The declared type of the second closure slot mentions the first.
        ty = dcc_infer(PAIR_DEFS, EMPTY, Label(3, (NatType(), NatLit(3))))
        assert alpha_eq(ty, parse_term("(x : Nat) -> Nat"))

    def test_label_pi_type_helper(self):
        ty = label_pi_type(PAIR_DEFS, 2, (Label(0, ()),))
        assert alpha_eq(ty, parse_term("(n : Nat) -> Nat"))

    def test_closure_arity_mismatch(self):
        with pytest.raises(ClosureArity):
            dcc_infer(PAIR_DEFS, EMPTY, Label(2, ()))

    def test_closure_argument_type_mismatch(self):
        with pytest.raises(ClosureTypeMismatch):
            dcc_infer(PAIR_DEFS, EMPTY, Label(3, (NatType(), Universe(0))))

    def test_unknown_label(self):
        with pytest.raises(UnknownLabel):
            dcc_infer(PAIR_DEFS, EMPTY, Label(99, ()))

    def test_closure_argument_variables_must_be_bound(self):
        with pytest.raises(UnboundVariable):
            dcc_infer(PAIR_DEFS, EMPTY, Label(3, (NatType(), Var("nope"))))


class TestReduce:
    def test_applied_label_unfolds_with_parallel_substitution(self, compose_st):
        elab, result = compose_st
        inner = result.defs.entries[0]  # innermost entry completes first
        closure = tuple(Var(n) for n, _ in inner.telescope)
        out = dcc_reduce_step(result.defs, App(Label(inner.label_id, closure),
                                               Var("x")))
        assert alpha_eq(out, parse_term("f (g x)"))

    def test_partial_application_steps_to_next_closure(self, compose_st):
        elab, result = compose_st
        out = dcc_reduce_step(result.defs, App(result.term, Var("f")))
        assert isinstance(out, Label)
        assert out.args[-1] == Var("f")

    def test_label_beta_helper(self):
        out = label_beta(PAIR_DEFS, 2, (Label(0, ()),), NatLit(1))
        assert out == App(Label(0, ()), App(Label(0, ()), NatLit(1)))

    def test_pi_is_normal(self):
        assert dcc_reduce_step(PAIR_DEFS, parse_term("(x : Nat) -> Nat")) is None

    def test_bare_label_is_inert(self):
        assert dcc_reduce_step(PAIR_DEFS, Label(0, ())) is None

    def test_reduction_inside_closure_arguments(self):
        t = Label(3, (NatType(), Add(NatLit(1), NatLit(1))))
        assert dcc_normalize(PAIR_DEFS, t) == Label(3, (NatType(), NatLit(2)))

    def test_normalize_compose_chain(self, compose_st):
        elab, result = compose_st
        chain = App(App(App(result.term, Var("f")), Var("g")), Var("x"))
        assert alpha_eq(dcc_normalize(result.defs, chain),
                        parse_term("f (g x)"))

    def test_arithmetic(self):
        assert dcc_normalize(PAIR_DEFS, Add(NatLit(2), NatLit(3))) == NatLit(5)

    def test_trace_is_stepwise(self):
        t = App(Label(2, (Label(0, ()),)), NatLit(1))
        trace = dcc_reduce_trace(PAIR_DEFS, t)
        assert trace[-1] == NatLit(3)
        for a, b in zip(trace, trace[1:]):
            assert dcc_reduce_step(PAIR_DEFS, a) == b


class TestEquiv:
    def test_distinct_labels_with_equal_definitions(self):
        # Nominally different labels; definitional equivalence sees through
        # them by applying both sides to a fresh argument.
        assert not alpha_eq(Label(0, ()), Label(1, ()))
        assert dcc_equiv(PAIR_DEFS, Label(0, ()), Label(1, ()))

    def test_one_step_related_terms(self):
        a = App(Label(0, ()), NatLit(1))
        assert dcc_equiv(PAIR_DEFS, a, NatLit(2))

    def test_translations_of_convertible_sources_are_equivalent(self, elaborated):
        elab = elaborated("typelevel_nat")
        t1 = parse_term("A (fun (n : Nat) => add 1 ((fun (x : Nat) => add 1 x) n))")
        t2 = parse_term("A (fun (n : Nat) => add 1 (add 1 n))")
        a, b, defs = shared_run(elab.ctx, t1, t2)
        assert not alpha_eq(a, b)
        assert dcc_equiv(defs, a, b)

    def test_distinct_ground_values_differ(self):
        assert not dcc_equiv(PAIR_DEFS, NatLit(1), NatLit(2))


class TestWellFormedness:
    def test_empty_is_well_formed(self):
        ok, detail = dcc_wf(parse_dcc("Nat").labels, EMPTY)
        assert ok and detail is None

    def test_translated_contexts_are_well_formed(self, elaborated):
        elab = elaborated("compose_dependent")
        result = defun(elab.ctx, elab.main)
        defs = label_union(result.defs, result.type_defs)
        defs = label_union(defs, result.ctx_defs)
        dcc_check(defs, result.dcc_ctx)

    def test_body_must_match_declared_return_type(self):
        bad = parse_dcc(
            "label l0 {} (x : Type 0) -> Type 0 := Type 0;"
        ).labels
        ok, detail = dcc_wf(bad, EMPTY)
        assert not ok
        assert detail

    def test_telescope_types_must_be_closed_by_prefix(self):
        bad = parse_dcc(
            "label l0 {a : A} (x : Nat) -> Nat := x;"
        ).labels
        ok, _ = dcc_wf(bad, EMPTY)
        assert not ok

    def test_later_entries_may_reference_earlier_ones(self):
        defs = parse_dcc(
            """
            label l0 {} (x : Nat) -> Nat := add x 1;
            label l1 {} (x : Nat) -> Nat := l0{} (l0{} x);
            """
        ).labels
        dcc_check(defs, EMPTY)
        assert dcc_normalize(defs, parse_dcc("l1{} 1").main) == NatLit(3)
