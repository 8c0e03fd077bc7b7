-- An eta-expanded identity on functions.
fun (f : Nat -> Nat) => fun (x : Nat) => f x
