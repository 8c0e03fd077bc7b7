-- The inner binder shadows the outer one at a different type.
fun (x : Nat) => (fun (x : Nat -> Nat) => x) (fun (y : Nat) => add x y)
