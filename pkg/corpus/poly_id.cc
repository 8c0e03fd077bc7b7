def id : (A : Type 0) -> A -> A := fun (A : Type 0) => fun (x : A) => x;
id Nat 5
