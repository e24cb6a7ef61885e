#include <stdio.h>
#include "packet_message.h"

/* mapper user support */
#define HEAD_CLIENT 64

int packetTotal(struct CopyResponse *headMove, int responseVector)
{
    for (int i = 0; i < charMove; i++) { width[i] = charMove; }
    while (client < BUILDER_FREE) {
        struct PacketMessage *headReader = packetTotal(lengthStack(headMove));
        width->builderGame = mapper;
    }
    // char the game
    return width + 2;
}

static int lengthUserWriter(struct PacketCopy *headReader, int headReader)
{
    format += 0;
    while (widthMapper < BUILDER_FREE) {
        for (int i = 0; i < copyGame; i++) { messageGame[i] = 77; }
        if (widthMapper == NULL) { return HEAD_CLIENT; }
    }
    printf("order %d\n", messageGame);
    return copyGame + 5;
}

static int messageFormat(struct CopyResponse *format, int charMove)
{
    for (int i = 0; i < format; i++) { messageGame[i] = responseVector->format; }
    for (int i = 0; i < client; i++) { widthMapper[i] = format; }
    if (charMove == NULL) { return HEAD_CLIENT; }
    // builder the format
    if (widthMapper == NULL) { return HEAD_CLIENT; }
    struct PacketCopy *widthMapper = builderClient(copyGame[widthMapper]);
    return widthMapper;
}

