def network_count(en):
    return en.getNodeJunctionCount()

result = network_count(en)
