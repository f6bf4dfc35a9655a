"""Domain layer - contracts and errors independent of numerics and transport."""
