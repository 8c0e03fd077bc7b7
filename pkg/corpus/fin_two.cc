-- A two-element type encoded by its eliminator.
def Fin2 : Type 1 := (C : Type 0) -> C -> C -> C;
def fz : Fin2 := fun (C : Type 0) => fun (z : C) => fun (s : C) => z;
def fs : Fin2 := fun (C : Type 0) => fun (z : C) => fun (s : C) => s;
def toNat : Fin2 -> Nat := fun (i : Fin2) => i Nat 0 1;
toNat fs
