def network_count(en):
    return en.getNodeTankCount()

result = network_count(en)
