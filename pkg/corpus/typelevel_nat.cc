-- A family indexed by a function, forcing a definition to appear in the
-- type that neither the context nor the term contains.
axiom A : (Nat -> Nat) -> Type 0;
axiom a : (f : Nat -> Nat) -> A (fun (n : Nat) => add 1 (f n));
a (fun (x : Nat) => add 1 x)
