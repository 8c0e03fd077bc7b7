-- Definitions expand into later definitions and the main term.
def inc : Nat -> Nat := fun (n : Nat) => add n 1;
def twice : (Nat -> Nat) -> Nat -> Nat :=
  fun (f : Nat -> Nat) => fun (x : Nat) => f (f x);
def res : Nat := twice inc 0;
res
