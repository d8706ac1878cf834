// Placeholder; the CLI is assembled once the planner and bench modules exist.
int main() { return 0; }
