-- A three-element type encoded by its eliminator.
def Fin3 : Type 1 := (C : Type 0) -> C -> C -> C -> C;
def f0 : Fin3 := fun (C : Type 0) => fun (a : C) => fun (b : C) => fun (c : C) => a;
def f2 : Fin3 := fun (C : Type 0) => fun (a : C) => fun (b : C) => fun (c : C) => c;
def toNat : Fin3 -> Nat := fun (i : Fin3) => i Nat 0 1 2;
toNat f2
