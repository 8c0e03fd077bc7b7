-- The Church numeral two, read back as a built-in number.
def two : (A : Type 0) -> (A -> A) -> A -> A :=
  fun (A : Type 0) => fun (f : A -> A) => fun (x : A) => f (f x);
two Nat (fun (n : Nat) => add 1 n) 0
