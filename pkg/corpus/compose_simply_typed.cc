-- Composition over three abstract base types.
axiom A : Type 0;
axiom B : Type 0;
axiom C : Type 0;
fun (f : B -> C) => fun (g : A -> B) => fun (x : A) => f (g x)
