def network_count(en):
    return en.getLinkPumpCount()

result = network_count(en)
