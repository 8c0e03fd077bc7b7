def const : (A : Type 0) -> (B : Type 0) -> A -> B -> A :=
  fun (A : Type 0) => fun (B : Type 0) => fun (x : A) => fun (y : B) => x;
const Nat Nat 3 4
