-- Composition applied to concrete arithmetic functions.
def compose : (Nat -> Nat) -> (Nat -> Nat) -> Nat -> Nat :=
  fun (f : Nat -> Nat) => fun (g : Nat -> Nat) => fun (x : Nat) => f (g x);
compose (fun (x : Nat) => add 2 x) (fun (x : Nat) => add 1 x) 4
