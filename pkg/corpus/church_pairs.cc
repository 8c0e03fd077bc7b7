-- Church-encoded pairs at a fixed result universe.
axiom A : Type 0;
axiom B : Type 0;
axiom a : A;
axiom b : B;
def Pair : Type 1 := (C : Type 0) -> (A -> B -> C) -> C;
def pair : A -> B -> Pair :=
  fun (x : A) => fun (y : B) => fun (C : Type 0) => fun (k : A -> B -> C) => k x y;
def fst : Pair -> A := fun (p : Pair) => p A (fun (x : A) => fun (y : B) => x);
fst (pair a b)
