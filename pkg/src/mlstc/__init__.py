"""Consistent strong/weak tie labelling for multilayer networks."""
