int main() { return 1; }  // placeholder until the criteria suite lands
