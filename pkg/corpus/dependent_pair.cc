-- A Church-encoded dependent pair over a family B.
axiom A : Type 0;
axiom B : A -> Type 0;
axiom a : A;
axiom b : B a;
def Sig : Type 1 := (C : Type 0) -> ((x : A) -> B x -> C) -> C;
def pack : (x : A) -> B x -> Sig :=
  fun (x : A) => fun (y : B x) => fun (C : Type 0) => fun (k : (x : A) -> B x -> C) => k x y;
pack a b
