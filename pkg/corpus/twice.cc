def twice : (Nat -> Nat) -> Nat -> Nat :=
  fun (f : Nat -> Nat) => fun (x : Nat) => f (f x);
twice (fun (n : Nat) => add n 2) 1
