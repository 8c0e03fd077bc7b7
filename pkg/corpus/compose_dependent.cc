-- Fully dependent function composition.
fun (A : Type 0) =>
fun (B : (x : A) -> Type 0) =>
fun (C : (x : A) -> (y : B x) -> Type 0) =>
fun (f : (y : A) -> (z : B y) -> C y z) =>
fun (g : (x : A) -> B x) =>
fun (x : A) => f x (g x)
