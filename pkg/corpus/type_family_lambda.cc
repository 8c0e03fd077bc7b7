-- A type-level beta redex in an annotation position.
fun (f : (fun (A : Type 0) => A -> A) Nat) => f 1
