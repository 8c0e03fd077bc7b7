-- Church booleans eliminated at Nat.
def Bool : Type 1 := (C : Type 0) -> C -> C -> C;
def tt : Bool := fun (C : Type 0) => fun (t : C) => fun (f : C) => t;
def ff : Bool := fun (C : Type 0) => fun (t : C) => fun (f : C) => f;
def ifThen : Bool -> Nat -> Nat -> Nat :=
  fun (b : Bool) => fun (t : Nat) => fun (e : Nat) => b Nat t e;
ifThen tt 1 0
