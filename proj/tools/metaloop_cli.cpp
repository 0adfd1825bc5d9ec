// Placeholder; the full CLI lands with the io module.
int main() { return 0; }
